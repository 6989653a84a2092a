#pragma once

// Transversal matroids of bipartite graphs: girth through Hall's condition,
// girth through random integer representations, and the clique gadget whose
// girth detects K-cliques.

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparkforge/error.hpp"
#include "sparkforge/exact_matrix.hpp"
#include "sparkforge/number_theory.hpp"
#include "sparkforge/spark.hpp"
#include "sparkforge/subsets.hpp"

namespace sparkforge {

/// Bipartite graph between a ground set E and a right side V'. The
/// transversal matroid lives on E.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  BipartiteGraph(std::size_t ground, std::size_t right, std::vector<std::vector<std::size_t>> adj)
      : ground_(ground), right_(right), adj_(std::move(adj)) {
    if (adj_.size() != ground_)
      throw Error(Errc::InvalidInput, "adjacency has " + std::to_string(adj_.size()) +
                                          " rows for " + std::to_string(ground_) + " ground elements");
    for (auto& nb : adj_) {
      std::sort(nb.begin(), nb.end());
      if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
        throw Error(Errc::InvalidInput, "duplicate edge");
      if (!nb.empty() && nb.back() >= right_)
        throw Error(Errc::IndexOutOfRange, "neighbor " + std::to_string(nb.back()) +
                                               " >= right size " + std::to_string(right_));
    }
  }

  std::size_t ground_size() const { return ground_; }
  std::size_t right_size() const { return right_; }
  const std::vector<std::vector<std::size_t>>& adjacency() const { return adj_; }
  const std::vector<std::size_t>& neighbors(std::size_t e) const { return adj_[e]; }

  bool has_edge(std::size_t e, std::size_t v) const {
    return std::binary_search(adj_[e].begin(), adj_[e].end(), v);
  }

  /// Copy with one extra edge e -- v (no-op if present).
  BipartiteGraph with_edge(std::size_t e, std::size_t v) const {
    auto adj = adj_;
    if (!has_edge(e, v)) adj[e].push_back(v);
    return BipartiteGraph(ground_, right_, std::move(adj));
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  std::size_t ground_ = 0;
  std::size_t right_ = 0;
  std::vector<std::vector<std::size_t>> adj_;
};

/// Undirected simple graph on vertices 0..n-1.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  SimpleGraph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges)
      : vertices_(vertices), edges_(std::move(edges)) {
    for (auto& [a, b] : edges_) {
      if (a >= vertices_ || b >= vertices_)
        throw Error(Errc::IndexOutOfRange, "edge endpoint out of range");
      if (a == b) throw Error(Errc::InvalidInput, "self loop on " + std::to_string(a));
      if (a > b) std::swap(a, b);
    }
    auto sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(Errc::InvalidInput, "duplicate edge");
  }

  static SimpleGraph complete(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) e.emplace_back(a, b);
    return SimpleGraph(n, std::move(e));
  }

  static SimpleGraph cycle(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t a = 0; a < n; ++a) e.emplace_back(a, (a + 1) % n);
    return SimpleGraph(n, std::move(e));
  }

  std::size_t vertices() const { return vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  bool adjacent(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return std::find(edges_.begin(), edges_.end(), std::make_pair(a, b)) != edges_.end();
  }

 private:
  std::size_t vertices_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Brute-force K-clique search.
inline bool has_clique(const SimpleGraph& g, std::size_t k) {
  if (k == 0) return true;
  if (k > g.vertices()) return false;
  Combination c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      for (std::size_t j = i + 1; j < k && ok; ++j) ok = g.adjacent(c[i], c[j]);
    if (ok) return true;
  } while (next_combination(c, g.vertices()));
  return false;
}

enum class GirthMethod { HallOracle, Representation };

inline const char* method_name(GirthMethod m) {
  return m == GirthMethod::HallOracle ? "hall_oracle" : "representation";
}

struct GirthResult {
  // |E|+1 when every subset is independent (free matroid).
  std::size_t girth = 0;
  std::optional<Combination> witness;
  GirthMethod method = GirthMethod::HallOracle;
  std::size_t trials_used = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t checked_subsets = 0;

  // No dependent subset was found; `girth` then holds the sentinel, which can
  // coincide with a real circuit size of another graph.
  bool is_free() const { return !witness.has_value(); }
};

/// Smallest k such that some k-subset of E has at most k-1 neighbors in total.
/// A minimal dependent set always has exactly |C|-1 neighbors, so the whole
/// subset's neighborhood is all that needs checking.
inline GirthResult hall_girth(const BipartiteGraph& g, const SweepOptions& opt = {}) {
  const std::size_t e = g.ground_size();
  if (e < 1) throw Error(Errc::InvalidInput, "ground set is empty");
  const std::size_t words = (g.right_size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> bits(e, std::vector<std::uint64_t>(std::max<std::size_t>(words, 1), 0));
  for (std::size_t i = 0; i < e; ++i)
    for (auto v : g.neighbors(i)) bits[i][v / 64] |= std::uint64_t{1} << (v % 64);

  GirthResult res;
  res.method = GirthMethod::HallOracle;
  for (std::size_t k = 1; k <= e; ++k) {
    const std::uint64_t level = binomial(e, k);
    if (level > opt.budget || res.checked_subsets > opt.budget - level)
      throw BudgetExceeded(k, "Hall sweep at size " + std::to_string(k) + " exceeds budget " +
                                  std::to_string(opt.budget));
    auto hit = find_first_subset(e, k, opt.threads, [&](const Combination& c) {
      std::size_t count = 0;
      for (std::size_t w = 0; w < bits[0].size(); ++w) {
        std::uint64_t u = 0;
        for (auto i : c) u |= bits[i][w];
        count += static_cast<std::size_t>(std::popcount(u));
        if (count >= k) return false;
      }
      return true;
    });
    if (hit) {
      res.girth = k;
      res.witness = hit->subset;
      res.checked_subsets += hit->rank + 1;
      return res;
    }
    res.checked_subsets += level;
  }
  res.girth = e + 1;
  return res;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Random integer matrix with the graph's zero pattern: rows are V', columns
/// are E, and each edge gets an entry drawn uniformly from {1, ..., N 2^(N+1)}
/// with N = |E|. Represents the transversal matroid with probability >= 1/2.
inline IntMatrix random_representation(const BipartiteGraph& g, std::uint64_t seed) {
  if (g.right_size() < 1) throw Error(Errc::ShapeError, "right side is empty");
  if (g.ground_size() < 1) throw Error(Errc::ShapeError, "ground set is empty");
  const std::size_t n = g.ground_size();
  mpz_class bound = static_cast<unsigned long>(n);
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n + 1);
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(seed));
  IntMatrix f(g.right_size(), n, mpz_class(0));
  for (std::size_t j = 0; j < n; ++j)
    for (auto i : g.neighbors(j)) f(i, j) = rng.get_z_range(bound) + 1;
  return f;
}

/// Maximum spark over `trials` random representations. Spark never exceeds
/// girth, and each draw hits it with probability >= 1/2.
inline GirthResult girth_via_representation(const BipartiteGraph& g, std::size_t trials,
                                            std::uint64_t seed, const SweepOptions& opt = {}) {
  if (trials < 1) throw Error(Errc::InvalidInput, "need at least one trial");
  GirthResult res;
  res.method = GirthMethod::Representation;
  res.seed = seed;
  for (std::size_t t = 0; t < trials; ++t) {
    const IntMatrix f = random_representation(g, detail::splitmix64(seed + t));
    std::size_t s;
    std::optional<Combination> w;
    std::uint64_t checked = 1;
    if (f.is_zero_matrix()) {
      s = 1;  // every element is a loop
      w = Combination{0};
    } else {
      const auto cert = spark(f, opt);
      s = cert.spark;
      w = cert.witness;
      checked = cert.checked_subsets;
    }
    res.checked_subsets += checked;
    if (s > res.girth) {
      res.girth = s;
      res.witness = w;
    }
    res.trials_used = t + 1;
  }
  return res;
}

/// Bipartite graph between the edges E of `g` and V + {C(K,2)-K-1 extra
/// vertices}; each edge is joined to its two endpoints and to every extra
/// vertex. Its transversal matroid has girth C(K,2) iff `g` has a K-clique.
inline BipartiteGraph clique_gadget(const SimpleGraph& g, std::size_t k) {
  if (k < 4) throw Error(Errc::BadK, "gadget needs K >= 4, got " + std::to_string(k));
  const std::size_t extra = k * (k - 1) / 2 - k - 1;
  const std::size_t v = g.vertices();
  std::vector<std::vector<std::size_t>> adj;
  adj.reserve(g.edges().size());
  for (const auto& [a, b] : g.edges()) {
    std::vector<std::size_t> nb{a, b};
    for (std::size_t x = 0; x < extra; ++x) nb.push_back(v + x);
    adj.push_back(std::move(nb));
  }
  return BipartiteGraph(g.edges().size(), v + extra, std::move(adj));
}

}  // namespace sparkforge
