#include <gtest/gtest.h>

#include <random>

#include "sparkforge/matroid.hpp"
#include "test_support.hpp"

using namespace sparkforge;
using oracle::girth_by_definition;

TEST(BipartiteGraph, Validation) {
  EXPECT_THROW(BipartiteGraph(2, 2, {{0}}), Error);
  EXPECT_THROW(BipartiteGraph(1, 2, {{0, 0}}), Error);
  try {
    BipartiteGraph(1, 2, {{2}});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::IndexOutOfRange);
  }
  const BipartiteGraph g(2, 3, {{2, 0}, {}});
  EXPECT_EQ(g.neighbors(0), (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(g.with_edge(1, 1).has_edge(1, 1));
}

TEST(SimpleGraph, Validation) {
  EXPECT_THROW(SimpleGraph(3, {{0, 0}}), Error);
  EXPECT_THROW(SimpleGraph(3, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(SimpleGraph(3, {{0, 3}}), Error);
  EXPECT_EQ(SimpleGraph::complete(5).edges().size(), 10U);
  EXPECT_TRUE(SimpleGraph::cycle(5).adjacent(4, 0));
  EXPECT_TRUE(has_clique(SimpleGraph::complete(5), 4));
  EXPECT_FALSE(has_clique(SimpleGraph::cycle(5), 3));
}

TEST(HallGirth, Examples) {
  const BipartiteGraph shared(2, 1, {{0}, {0}});
  EXPECT_EQ(hall_girth(shared).girth, 2U);
  EXPECT_EQ(hall_girth(shared).witness, (Combination{0, 1}));

  const BipartiteGraph complete(3, 3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  const auto free = hall_girth(complete);
  EXPECT_EQ(free.girth, 4U);
  EXPECT_FALSE(free.witness);
  EXPECT_EQ(free.checked_subsets, 7U);

  const BipartiteGraph loop(3, 2, {{0}, {}, {1}});
  EXPECT_EQ(hall_girth(loop).girth, 1U);
  EXPECT_EQ(hall_girth(loop).witness, (Combination{1}));
}

TEST(HallGirth, MatchesDefinition) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto g = oracle::sample_girth_graph(rng);
    EXPECT_EQ(hall_girth(g).girth, girth_by_definition(g));
  }
}

TEST(HallGirth, Budget) {
  const BipartiteGraph complete(8, 8, std::vector<std::vector<std::size_t>>(8, {0, 1, 2, 3, 4, 5, 6, 7}));
  try {
    (void)hall_girth(complete, {.budget = 50, .threads = 1});
    FAIL();
  } catch (const BudgetExceeded& err) {
    EXPECT_EQ(err.reached_k(), 3U);
  }
}

TEST(HallGirth, AddingEdgesNeverLowersGirth) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto g = oracle::sample_girth_graph(rng);
    std::uniform_int_distribution<std::size_t> e(0, g.ground_size() - 1), v(0, g.right_size() - 1);
    const auto h = g.with_edge(e(rng), v(rng));
    EXPECT_GE(hall_girth(h).girth, hall_girth(g).girth);
  }
}

TEST(Representation, PatternMatchesGraph) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto g = oracle::sample_girth_graph(rng);
    const auto f = random_representation(g, rng());
    const mpz_class bound = mpz_class(static_cast<unsigned long>(g.ground_size())) << (g.ground_size() + 1);
    ASSERT_EQ(f.rows(), g.right_size());
    ASSERT_EQ(f.cols(), g.ground_size());
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t j = 0; j < f.cols(); ++j) {
        if (g.has_edge(j, i)) {
          EXPECT_GE(f(i, j), 1);
          EXPECT_LE(f(i, j), bound);
        } else {
          EXPECT_EQ(f(i, j), 0);
        }
      }
  }
}

TEST(Representation, Reproducible) {
  const BipartiteGraph g(3, 2, {{0, 1}, {1}, {0}});
  EXPECT_EQ(random_representation(g, 99), random_representation(g, 99));
  EXPECT_EQ(girth_via_representation(g, 3, 7).girth, girth_via_representation(g, 3, 7).girth);
}

TEST(Representation, EmptyGraphGivesZeroMatrix) {
  const BipartiteGraph g(3, 2, {{}, {}, {}});
  EXPECT_TRUE(random_representation(g, 1).is_zero_matrix());
  const auto r = girth_via_representation(g, 2, 1);
  EXPECT_EQ(r.girth, 1U);
  EXPECT_EQ(hall_girth(g).girth, 1U);
}

TEST(Representation, FreeMatroidGivesSentinel) {
  const BipartiteGraph g(3, 3, {{0}, {1}, {2}});
  const auto r = girth_via_representation(g, 1, 42);
  EXPECT_EQ(r.girth, 4U);
  EXPECT_EQ(r.trials_used, 1U);
  EXPECT_EQ(r.seed, 42U);
  EXPECT_EQ(r.method, GirthMethod::Representation);
}

TEST(Representation, SparkNeverExceedsGirth) {
  std::mt19937_64 rng(100);
  for (int t = 0; t < 100; ++t) {
    const auto g = oracle::sample_girth_graph(rng);
    const auto f = random_representation(g, rng());
    const std::size_t s = f.is_zero_matrix() ? 1 : spark(f).spark;
    EXPECT_LE(s, hall_girth(g).girth);
  }
}

TEST(Representation, TenTrialsMatchHall) {
  std::mt19937_64 rng(20);
  for (int t = 0; t < 20; ++t) {
    const auto g = oracle::sample_girth_graph(rng);
    EXPECT_EQ(girth_via_representation(g, 10, 1000 + t).girth, hall_girth(g).girth);
  }
}

TEST(Representation, SingleTrialSucceedsAtLeastHalfTheTime) {
  std::mt19937_64 rng(21);
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    const auto g = oracle::sample_girth_graph(rng);
    agree += girth_via_representation(g, 1, 5000 + t).girth == hall_girth(g).girth;
  }
  // Reject "success rate < 1/2" at the 1% level.
  EXPECT_LE(oracle::binomial_upper_tail(100, agree, 0.5), 0.01) << agree << "/100";
}

TEST(Representation, Errors) {
  EXPECT_THROW((void)random_representation(BipartiteGraph(2, 0, {{}, {}}), 1), Error);
  EXPECT_THROW((void)girth_via_representation(BipartiteGraph(1, 1, {{0}}), 0, 1), Error);
}

TEST(CliqueGadget, CompleteAndCycle) {
  const auto k5 = clique_gadget(SimpleGraph::complete(5), 4);
  EXPECT_EQ(k5.ground_size(), 10U);
  EXPECT_EQ(k5.right_size(), 5U + 1U);
  EXPECT_EQ(hall_girth(k5).girth, 6U);
  EXPECT_EQ(girth_by_definition(k5), 6U);

  // Five edges leave the gadget free: its sentinel is 6 but no 6-circuit exists.
  const auto c5 = hall_girth(clique_gadget(SimpleGraph::cycle(5), 4));
  EXPECT_TRUE(c5.is_free());
  EXPECT_TRUE(c5.is_free() || c5.girth != 6U);

  auto c6 = SimpleGraph::cycle(6);
  // K5 minus two disjoint edges: no 4-clique, but any 7 of its 8 edges form a circuit.
  const SimpleGraph dense(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}});
  EXPECT_FALSE(has_clique(dense, 4));
  const auto d = hall_girth(clique_gadget(dense, 4));
  EXPECT_FALSE(d.is_free());
  EXPECT_EQ(d.girth, 7U);
  EXPECT_EQ(hall_girth(clique_gadget(c6, 4)).girth, 7U);
  EXPECT_FALSE(has_clique(SimpleGraph::cycle(5), 4));
}

TEST(CliqueGadget, RightSideSize) {
  for (std::size_t k = 4; k <= 7; ++k)
    EXPECT_EQ(clique_gadget(SimpleGraph::complete(6), k).right_size(), 6 + k * (k - 1) / 2 - k - 1);
  try {
    (void)clique_gadget(SimpleGraph::complete(4), 3);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::BadK);
  }
}

TEST(CliqueGadget, Soundness) {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> nv(4, 6);
  std::uniform_real_distribution<double> p(0.3, 0.95);
  int with_clique = 0;
  for (int t = 0; t < 50; ++t) {
    const auto g = oracle::random_simple_graph(rng, nv(rng), p(rng));
    if (g.edges().empty()) continue;
    const bool clique = has_clique(g, 4);
    with_clique += clique;
    // A gadget with exactly 5 edges is free and its sentinel |E|+1 is also 6.
    const auto r = hall_girth(clique_gadget(g, 4));
    EXPECT_EQ(r.girth == 6 && !r.is_free(), clique) << t;
  }
  EXPECT_GT(with_clique, 0);
}
