#pragma once

// Independent oracles and random generators shared by the test suites. None
// of these route through the elimination code they are used to check.

#include <gmpxx.h>

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "sparkforge/sparkforge.hpp"

namespace sparkforge::oracle {

/// Laplace expansion along the first row.
template <typename T, typename Zero>
T cofactor_det(const Matrix<T>& a, Zero zero) {
  const std::size_t n = a.rows();
  if (n == 0) return zero();
  if (n == 1) return a(0, 0);
  T acc = zero();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::size_t> keep_rows, keep_cols;
    for (std::size_t i = 1; i < n; ++i) keep_rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != c) keep_cols.push_back(j);
    const auto minor = a.select_rows(keep_rows).select_columns(keep_cols);
    const T term = a(0, c) * cofactor_det(minor, zero);
    if (c % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

inline mpz_class cofactor_det(const IntMatrix& a) {
  if (a.rows() == 0) return 1;
  return cofactor_det(a, [] { return mpz_class(0); });
}

inline ExactScalar cofactor_det(const CycMatrix& a) {
  const auto ord = a.order();
  if (a.rows() == 0) return ExactScalar::one(ord);
  return cofactor_det(a, [ord] { return ExactScalar::zero(ord); });
}

inline IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                   int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(rows, cols, mpz_class(0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline CycInt random_cycint(std::mt19937_64& rng, std::int64_t order, int range = 5) {
  std::uniform_int_distribution<int> d(-range, range);
  IntPoly p(static_cast<std::size_t>(euler_phi(order)));
  for (auto& c : p) c = d(rng);
  return CycInt::from_poly(order, std::move(p));
}

inline CycInt random_nonzero_cycint(std::mt19937_64& rng, std::int64_t order, int range = 5) {
  while (true) {
    auto c = random_cycint(rng, order, range);
    if (!c.is_zero()) return c;
  }
}

inline ExactScalar random_scalar(std::mt19937_64& rng, std::int64_t order) {
  std::uniform_int_distribution<int> den(1, 4);
  return ExactScalar(random_cycint(rng, order, 3), mpz_class(den(rng)));
}

inline CycMatrix random_cyc_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                   std::int64_t order) {
  std::vector<ExactScalar> v;
  for (std::size_t i = 0; i < rows * cols; ++i) v.push_back(random_scalar(rng, order));
  return CycMatrix(rows, cols, std::move(v), order);
}

inline ComplexMatrix to_eigen(const CycMatrix& m) {
  ComplexMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).evaluate();
  return out;
}

inline ComplexMatrix random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> d;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = {d(rng), d(rng)};
  return m;
}

/// Real parts scaled by 2^20 and rounded; exact spark of this copy stands in
/// for the spark of a real Gaussian matrix.
inline IntMatrix rationalize_real(const Eigen::MatrixXd& m) {
  IntMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()), mpz_class(0));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          static_cast<long>(std::llround(m(i, j) * 1048576.0));
  return out;
}

/// |sum_{m<M} e^{2 pi i x m}|^2 by direct summation.
inline double g_direct(double x, std::size_t rows) {
  std::complex<double> s = 0;
  for (std::size_t m = 0; m < rows; ++m)
    s += std::polar(1.0, 2.0 * std::numbers::pi * x * static_cast<double>(m));
  return std::norm(s);
}

inline BipartiteGraph random_bipartite(std::mt19937_64& rng, std::size_t ground, std::size_t right,
                                       double p) {
  std::bernoulli_distribution edge(p);
  std::vector<std::vector<std::size_t>> adj(ground);
  for (std::size_t e = 0; e < ground; ++e)
    for (std::size_t v = 0; v < right; ++v)
      if (edge(rng)) adj[e].push_back(v);
  return BipartiteGraph(ground, right, std::move(adj));
}

inline SimpleGraph random_simple_graph(std::mt19937_64& rng, std::size_t vertices, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t a = 0; a < vertices; ++a)
    for (std::size_t b = a + 1; b < vertices; ++b)
      if (edge(rng)) e.emplace_back(a, b);
  return SimpleGraph(vertices, std::move(e));
}

/// Exhaustive girth from the definition: smallest subset with no matching
/// saturating it, using Hall's condition on every sub-subset.
inline std::size_t girth_by_definition(const BipartiteGraph& g) {
  const std::size_t e = g.ground_size();
  auto neighbours = [&](std::uint32_t mask) {
    std::vector<bool> seen(g.right_size(), false);
    std::size_t count = 0;
    for (std::size_t i = 0; i < e; ++i)
      if (mask >> i & 1U)
        for (auto v : g.neighbors(i))
          if (!seen[v]) {
            seen[v] = true;
            ++count;
          }
    return count;
  };
  auto independent = [&](std::uint32_t mask) {
    for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask)
      if (neighbours(sub) < static_cast<std::size_t>(std::popcount(sub))) return false;
    return true;
  };
  std::size_t best = e + 1;
  for (std::uint32_t mask = 1; mask < (1U << e); ++mask)
    if (!independent(mask)) best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
  return best;
}

/// P(X >= x) for X ~ Binomial(n, p).
inline double binomial_upper_tail(int n, int x, double p) {
  double total = 0;
  for (int k = x; k <= n; ++k)
    total += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                      k * std::log(p) + (n - k) * std::log1p(-p));
  return total;
}

/// Bipartite graphs used for girth cross-checks: |E| in [3, 7], |V'| in [2, 6].
inline BipartiteGraph sample_girth_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> ground(3, 7), right(2, 6);
  std::uniform_real_distribution<double> density(0.25, 0.6);
  const auto e = ground(rng);
  const auto r = right(rng);
  return random_bipartite(rng, e, r, density(rng));
}

}  // namespace sparkforge::oracle
