#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "sparkforge/constructions.hpp"
#include "sparkforge/dft_analysis.hpp"
#include "sparkforge/spark.hpp"
#include "test_support.hpp"

using namespace sparkforge;

namespace {

bool exact_full_spark(const IndexSet& rows) {
  return is_full_spark(*harmonic(rows.order(), rows, false).exact_shadow).full_spark();
}

IndexSet singer_set() {
  std::ifstream in(SPARKFORGE_TEST_DATA "/singer121.txt");
  std::vector<std::int64_t> v;
  for (std::int64_t x; in >> x;) v.push_back(x);
  return IndexSet(121, v);
}

}  // namespace

TEST(Distribution, Examples) {
  const IndexSet a(8, {0, 1, 4});
  auto r = distribution_report(a, 2);
  EXPECT_EQ(r.coset_counts, (std::vector<std::int64_t>{2, 1}));
  EXPECT_TRUE(r.uniform);
  r = distribution_report(a, 4);
  EXPECT_EQ(r.coset_counts, (std::vector<std::int64_t>{2, 1, 0, 0}));
  EXPECT_FALSE(r.uniform);

  const IndexSet b(8, {0, 2});
  r = distribution_report(b, 4);
  EXPECT_EQ(r.coset_counts, (std::vector<std::int64_t>{1, 0, 1, 0}));
  EXPECT_TRUE(r.uniform);
  r = distribution_report(b, 2);
  EXPECT_EQ(r.coset_counts, (std::vector<std::int64_t>{2, 0}));
  EXPECT_FALSE(r.uniform);
  EXPECT_EQ(r.lo, 1);
  EXPECT_EQ(r.hi, 1);
}

TEST(Distribution, NotADivisor) {
  try {
    (void)distribution_report(IndexSet(8, {0}), 3);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::NotADivisor);
  }
}

TEST(Uniformity, PrefixesAndFullSet) {
  for (std::int64_t n = 1; n <= 30; ++n) {
    for (std::int64_t m = 1; m <= n; ++m) EXPECT_TRUE(is_uniformly_distributed(IndexSet::prefix(n, m)).uniform);
    EXPECT_TRUE(is_uniformly_distributed(IndexSet::full(n)).uniform);
  }
}

TEST(Uniformity, SingerSetViolatesEleven) {
  const auto s = singer_set();
  ASSERT_EQ(s.size(), 40U);
  const auto res = is_uniformly_distributed(s);
  EXPECT_FALSE(res.uniform);
  ASSERT_FALSE(res.violations.empty());
  bool eleven = false;
  for (const auto& v : res.violations) eleven |= v.divisor == 11;
  EXPECT_TRUE(eleven);
  EXPECT_FALSE(full_spark_prime_power(s).full_spark);
}

TEST(PrimePower, Examples) {
  EXPECT_FALSE(full_spark_prime_power(IndexSet(4, {0, 2})).full_spark);
  EXPECT_TRUE(full_spark_prime_power(IndexSet(4, {0, 1})).full_spark);
  EXPECT_TRUE(exact_full_spark(IndexSet(4, {0, 1})));
  EXPECT_TRUE(full_spark_prime_power(IndexSet(9, {0, 1, 2})).full_spark);
  EXPECT_TRUE(exact_full_spark(IndexSet(9, {0, 1, 2})));
  const auto v = full_spark_prime_power(IndexSet(9, {0, 3}));
  EXPECT_EQ(v.modulus.prime, 3);
  EXPECT_EQ(v.modulus.exponent, 2);
  EXPECT_FALSE(v.full_spark);
}

TEST(PrimePower, RefusesOtherModuli) {
  for (std::int64_t n : {6, 10, 12, 1}) {
    try {
      (void)full_spark_prime_power(IndexSet(n, {0}));
      FAIL() << n;
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), Errc::NotPrimePower);
    }
  }
}

TEST(PrimePower, AgreesWithDeterminantSweep) {
  for (std::int64_t n : {4, 8, 9}) {
    std::size_t disagreements = 0;
    for (std::uint64_t mask = 1; mask + 1 < (1ULL << n); ++mask) {
      const auto rows = IndexSet::from_mask(n, mask);
      disagreements += full_spark_prime_power(rows).full_spark != exact_full_spark(rows);
    }
    EXPECT_EQ(disagreements, 0U) << "N=" << n;
  }
}

TEST(PrimePower, NecessityForComposite) {
  for (std::int64_t n : {6, 10, 12}) {
    for (std::uint64_t mask = 1; mask + 1 < (1ULL << n); ++mask) {
      // Contrapositive form: the sweep stops at the first singular minor.
      const auto rows = IndexSet::from_mask(n, mask);
      if (!is_uniformly_distributed(rows).uniform) { EXPECT_FALSE(exact_full_spark(rows)) << rows.to_string(); }
    }
  }
}

TEST(PrimePower, SufficiencyFailsAtTen) {
  const IndexSet rows(10, {0, 1, 3, 4});
  EXPECT_TRUE(is_uniformly_distributed(rows).uniform);
  const auto f = *harmonic(10, rows, false).exact_shadow;
  EXPECT_TRUE(det_exact(f.select_columns(std::vector<std::size_t>{0, 1, 2, 6})).is_zero());
  EXPECT_FALSE(is_full_spark(f).full_spark());
}

TEST(Orbit, Examples) {
  const auto o = closure_orbit(IndexSet(4, {0, 1}));
  for (auto s : {IndexSet(4, {1, 2}), IndexSet(4, {2, 3}), IndexSet(4, {0, 3})}) EXPECT_TRUE(o.contains(s));
  const auto seven = closure_orbit(IndexSet(7, {0, 1, 2}));
  EXPECT_TRUE(seven.contains(IndexSet(7, {0, 3, 6})));
  EXPECT_TRUE(seven.contains(IndexSet(7, {3, 4, 5, 6})));
  for (const auto& s : seven) EXPECT_TRUE(s.size() == 3 || s.size() == 4);
}

TEST(Orbit, ClosedUnderGenerators) {
  const auto o = closure_orbit(IndexSet(12, {0, 1, 5}));
  for (const auto& s : o) {
    EXPECT_TRUE(o.contains(s.translate(1)));
    EXPECT_TRUE(o.contains(s.scale(5)));
    EXPECT_TRUE(o.contains(s.scale(7)));
    EXPECT_TRUE(o.contains(s.complement()));
  }
}

TEST(Orbit, Errors) {
  for (const auto& bad : {IndexSet(5, {}), IndexSet::full(5)}) {
    try {
      (void)closure_orbit(bad);
      FAIL();
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), Errc::DegenerateSet);
    }
  }
  try {
    (void)closure_orbit(IndexSet(16, {0, 1, 3, 7, 8}), 10);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::OrbitCapExceeded);
  }
}

TEST(Orbit, MembersShareFullSparkStatus) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> mask(1, 254);
  for (int t = 0; t < 20; ++t) {
    const auto seed = IndexSet::from_mask(8, mask(rng));
    const bool expect = exact_full_spark(seed);
    for (const auto& s : closure_orbit(seed)) EXPECT_EQ(exact_full_spark(s), expect) << seed.to_string() << " -> " << s.to_string();
  }
}

TEST(Orbit, ComplementOfUniformIsUniform) {
  for (std::int64_t n : {8, 9})
    for (std::uint64_t mask = 1; mask + 1 < (1ULL << n); ++mask) {
      const auto rows = IndexSet::from_mask(n, mask);
      if (is_uniformly_distributed(rows).uniform) { EXPECT_TRUE(is_uniformly_distributed(rows.complement()).uniform); }
    }
}

TEST(Rip, Examples) {
  const IndexSet rows(8, {0, 1, 4});
  auto res = rip_necessary_check(rows, 2, 0.3);
  EXPECT_FALSE(res.pass);
  ASSERT_FALSE(res.violations.empty());
  EXPECT_EQ(res.violations.front().divisor, 2);
  EXPECT_EQ(res.violations.front().residue, 0);
  EXPECT_EQ(res.violations.front().count, 2);
  EXPECT_NEAR(res.violations.front().deviation, 0.5, 1e-15);
  EXPECT_NEAR(res.violations.front().allowed, 0.45, 1e-15);
  EXPECT_TRUE(rip_necessary_check(rows, 2, 0.4).pass);

  for (std::int64_t n : {6, 8, 12})
    for (std::int64_t k = 1; k <= n; ++k) EXPECT_TRUE(rip_necessary_check(IndexSet::full(n), k, 0.01).pass);
}

TEST(Rip, OnlyDivisorsUpToK) {
  // {0,1,4} mod 4 is unbalanced but K=3 never looks at d=4.
  const IndexSet rows(8, {0, 1, 4});
  auto res = rip_necessary_check(rows, 8, 0.3);
  for (const auto& v : res.violations) EXPECT_LE(v.divisor, 8);
  for (const auto& v : rip_necessary_check(rows, 3, 0.9).violations) EXPECT_LE(v.divisor, 3);
  EXPECT_THROW((void)rip_necessary_check(rows, 0, 0.3), Error);
}
