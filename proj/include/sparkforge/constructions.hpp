#pragma once

// Frame builders (Vandermonde, harmonic, harmonic + identity, Parseval
// projection) and coherence analytics.

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "sparkforge/cyclotomic.hpp"
#include "sparkforge/error.hpp"
#include "sparkforge/exact_matrix.hpp"
#include "sparkforge/frame.hpp"
#include "sparkforge/index_set.hpp"
#include "sparkforge/number_theory.hpp"

namespace sparkforge {

/// w_N^power with w_N = exp(-2 pi i / N).
struct RootOfUnity {
  std::int64_t order;
  std::int64_t power;
};

using VandermondeBase = std::variant<std::int64_t, RootOfUnity, std::complex<double>>;

namespace detail {

inline std::complex<double> unit_root(std::int64_t order, std::int64_t power) {
  const double t = -2.0 * std::numbers::pi * static_cast<double>(mod(power, order)) /
                   static_cast<double>(order);
  return std::polar(1.0, t);
}

}  // namespace detail

/// Entry (m, n) = bases[n]^m for m = 0..M-1. An exact shadow is attached when
/// every base is an integer or every base is a root of unity.
inline Frame vandermonde(const std::vector<VandermondeBase>& bases, std::size_t rows) {
  if (bases.empty()) throw Error(Errc::EmptyBases, "vandermonde needs at least one base");
  if (rows < 1) throw Error(Errc::ShapeError, "vandermonde needs M >= 1");
  if (bases.size() < rows)
    throw Error(Errc::ShapeError, std::to_string(bases.size()) + " bases for " +
                                      std::to_string(rows) + " rows");
  const std::size_t n = bases.size();
  Frame f;
  f.provenance.kind = "vandermonde";
  f.provenance.params["rows"] = std::to_string(rows);
  f.entries.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));

  const bool all_int = std::all_of(bases.begin(), bases.end(), [](const auto& b) {
    return std::holds_alternative<std::int64_t>(b);
  });
  const bool all_root = std::all_of(bases.begin(), bases.end(), [](const auto& b) {
    return std::holds_alternative<RootOfUnity>(b);
  });

  if (all_int) {
    std::vector<ExactScalar> shadow;
    shadow.reserve(rows * n);
    for (std::size_t m = 0; m < rows; ++m)
      for (std::size_t c = 0; c < n; ++c) {
        mpz_class v;
        mpz_class b = std::get<std::int64_t>(bases[c]);
        mpz_pow_ui(v.get_mpz_t(), b.get_mpz_t(), m);
        f.entries(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c)) = v.get_d();
        shadow.emplace_back(1, v);
      }
    f.exact_shadow = CycMatrix(rows, n, std::move(shadow), 1);
    return f;
  }

  if (all_root) {
    std::int64_t order = 1;
    for (const auto& b : bases) {
      const auto& r = std::get<RootOfUnity>(b);
      if (r.order < 1) throw Error(Errc::InvalidInput, "root of unity order must be positive");
      order = std::lcm(order, r.order);
    }
    std::vector<ExactScalar> shadow;
    shadow.reserve(rows * n);
    for (std::size_t m = 0; m < rows; ++m)
      for (std::size_t c = 0; c < n; ++c) {
        const auto& r = std::get<RootOfUnity>(bases[c]);
        const std::int64_t e =
            mod(mod(r.power, r.order) * (order / r.order) % order * static_cast<std::int64_t>(m),
                order);
        f.entries(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c)) =
            detail::unit_root(order, e);
        shadow.emplace_back(root_power(order, e));
      }
    f.exact_shadow = CycMatrix(rows, n, std::move(shadow), order);
    return f;
  }

  for (std::size_t c = 0; c < n; ++c) {
    std::complex<double> b;
    if (const auto* i = std::get_if<std::int64_t>(&bases[c]))
      b = static_cast<double>(*i);
    else if (const auto* r = std::get_if<RootOfUnity>(&bases[c]))
      b = detail::unit_root(r->order, r->power);
    else
      b = std::get<std::complex<double>>(bases[c]);
    std::complex<double> p = 1;
    for (std::size_t m = 0; m < rows; ++m) {
      f.entries(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c)) = p;
      p *= b;
    }
  }
  return f;
}

/// Rows `rows` of the N x N DFT, entry w^(mn). With `normalize` the columns
/// are scaled to unit norm; the shadow is always the unscaled DFT block.
inline Frame harmonic(std::int64_t order, const IndexSet& rows, bool normalize) {
  if (order < 1) throw Error(Errc::InvalidInput, "DFT order must be positive");
  if (rows.order() != order)
    throw Error(Errc::IndexOutOfRange, "row set lives in Z_" + std::to_string(rows.order()) +
                                           ", not Z_" + std::to_string(order));
  if (rows.empty()) throw Error(Errc::InvalidInput, "harmonic frame needs at least one row");
  const std::size_t m = rows.size();
  const auto n = static_cast<std::size_t>(order);
  Frame f;
  f.entries.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  std::vector<ExactScalar> shadow;
  shadow.reserve(m * n);
  const double scale = normalize ? 1.0 / std::sqrt(static_cast<double>(m)) : 1.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < n; ++c) {
      const std::int64_t e = mod(rows.members()[i] * static_cast<std::int64_t>(c), order);
      f.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          scale * detail::unit_root(order, e);
      shadow.emplace_back(root_power(order, e));
    }
  f.exact_shadow = CycMatrix(m, n, std::move(shadow), order);
  if (normalize) f.shadow_col_scale.assign(n, scale);
  f.provenance.kind = "harmonic";
  f.provenance.params = {{"n", std::to_string(order)},
                         {"rows", rows.to_string()},
                         {"normalize", normalize ? "true" : "false"}};
  f.provenance.unit_norm = normalize;
  f.provenance.tight_bound =
      normalize ? static_cast<double>(order) / static_cast<double>(m) : static_cast<double>(order);
  return f;
}

/// [DH | e_1 ... e_K] for prime N: D puts sqrt((N+K-M)/(MN)) on the first K
/// rows and sqrt((N+K)/(MN)) on the rest. The result is a unit norm tight
/// frame with FF* = ((N+K)/M) I. The shadow is [H | E_K]; positive row
/// scaling does not change which submatrices are singular.
inline Frame harmonic_identity(std::int64_t prime, const IndexSet& rows, std::size_t k) {
  if (!is_prime(prime)) throw Error(Errc::NotPrime, std::to_string(prime) + " is not prime");
  const std::size_t m = rows.size();
  if (rows.order() != prime)
    throw Error(Errc::ShapeError, "row set must live in Z_" + std::to_string(prime));
  if (m < 1 || m > static_cast<std::size_t>(prime))
    throw Error(Errc::ShapeError, "need 1 <= M <= N rows");
  if (k < 1 || k > m) throw Error(Errc::ShapeError, "need 1 <= K <= M");

  const auto n = static_cast<std::size_t>(prime);
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  const double d_head = std::sqrt(static_cast<double>(n + k - m) / mn);
  const double d_tail = std::sqrt(static_cast<double>(n + k) / mn);

  const Frame h = harmonic(prime, rows, false);
  Frame f;
  f.entries = ComplexMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n + k));
  std::vector<ExactScalar> shadow;
  shadow.reserve(m * (n + k));
  f.shadow_row_scale.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = i < k ? d_head : d_tail;
    f.shadow_row_scale[i] = d;
    for (std::size_t c = 0; c < n; ++c) {
      f.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          d * h.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
      shadow.push_back((*h.exact_shadow)(i, c));
    }
    for (std::size_t c = 0; c < k; ++c) {
      const bool on = (c == i);
      if (on) f.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n + c)) = 1.0;
      shadow.emplace_back(prime, mpz_class(on ? 1 : 0));
    }
  }
  f.exact_shadow = CycMatrix(m, n + k, std::move(shadow), prime);
  f.shadow_col_scale.assign(n + k, 1.0);
  for (std::size_t c = 0; c < k; ++c) f.shadow_col_scale[n + c] = 1.0 / d_head;
  f.provenance.kind = "harmonic_identity";
  f.provenance.params = {
      {"n", std::to_string(prime)}, {"rows", rows.to_string()}, {"k", std::to_string(k)}};
  f.provenance.unit_norm = true;
  f.provenance.tight_bound = static_cast<double>(n + k) / static_cast<double>(m);
  return f;
}

/// {k^2 mod N : k in Z_N} for a prime N = 1 (mod 4); size (N+1)/2.
inline IndexSet quadratic_residue_rows(std::int64_t prime) {
  if (!is_prime(prime) || prime % 4 != 1)
    throw Error(Errc::BadModulus, std::to_string(prime) + " is not a prime congruent to 1 mod 4");
  std::vector<std::int64_t> sq;
  for (std::int64_t k = 0; k < prime; ++k) sq.push_back(k * k % prime);
  return IndexSet(prime, std::move(sq));
}

/// G = (FF*)^(-1/2) F, the closest Parseval frame with the same row space map.
inline Frame parseval_projection(const Frame& f) {
  if (!all_finite(f.entries)) throw Error(Errc::NonFiniteEntry, "frame has non-finite entries");
  const auto m = f.entries.rows();
  if (m == 0 || f.entries.cols() < m)
    throw Error(Errc::RankDeficient, "frame has fewer columns than rows");
  const auto sv = Eigen::JacobiSVD<ComplexMatrix>(f.entries).singularValues();
  if (!(sv(m - 1) > 1e-10 * sv(0)))
    throw Error(Errc::RankDeficient, "sigma_min / sigma_max below 1e-10");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(f.entries * f.entries.adjoint());
  const Eigen::VectorXd inv_sqrt = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  const ComplexMatrix root =
      eig.eigenvectors() * inv_sqrt.cast<std::complex<double>>().asDiagonal() *
      eig.eigenvectors().adjoint();
  Frame g;
  g.entries = root * f.entries;
  g.provenance.kind = "parseval_projection";
  g.provenance.params = f.provenance.params;
  g.provenance.params["source"] = f.provenance.kind;
  g.provenance.parseval = true;
  g.provenance.tight_bound = 1.0;
  return g;
}

struct Coherence {
  double mu = 0;
  std::size_t i = 0;
  std::size_t j = 0;
};

/// Worst-case coherence of the unit-normalized columns; ties go to the
/// lexicographically first pair.
inline Coherence coherence(const ComplexMatrix& f) {
  const auto n = f.cols();
  if (n < 2) throw Error(Errc::ShapeError, "coherence needs at least two columns");
  ComplexMatrix u = f;
  for (Eigen::Index c = 0; c < n; ++c) {
    const double norm = u.col(c).norm();
    if (norm == 0) throw Error(Errc::ZeroColumn, "column " + std::to_string(c) + " is zero");
    u.col(c) /= norm;
  }
  const ComplexMatrix gram = u.adjoint() * u;
  Coherence best{-1, 0, 1};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::abs(gram(i, j));
      if (v > best.mu) best = {v, static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
    }
  return best;
}

inline Coherence coherence(const Frame& f) { return coherence(f.entries); }

/// Lower bound on mu^2 for N unit vectors in dimension M.
inline double welch_bound(std::size_t rows, std::size_t cols) {
  return static_cast<double>(cols - rows) /
         (static_cast<double>(rows) * static_cast<double>(cols - 1));
}

/// g(x) = |sum_{m<M} e^{2 pi i x m}|^2 = (sin(M pi x) / sin(pi x))^2, equal to
/// M^2 at integer x.
inline double g_eval(double x, std::size_t rows) {
  if (rows < 1) throw Error(Errc::InvalidInput, "g needs M >= 1");
  const double r = x - std::round(x);  // g has period 1; keeps sin(pi r) away from rounding noise
  const double mm = static_cast<double>(rows);
  if (r == 0) return mm * mm;
  const double q = std::sin(mm * std::numbers::pi * r) / std::sin(std::numbers::pi * r);
  return q * q;
}

/// Vandermonde frame with the N equally spaced unit-circle bases w^n, which
/// is also the first M rows of the N x N DFT. Minimizes worst-case coherence
/// among unit-circle Vandermonde frames when N >= 2M; with `strict` false a
/// smaller N is built anyway and tagged out of contract.
inline Frame optimal_vandermonde(std::size_t cols, std::size_t rows, bool strict = true) {
  if (rows < 1 || cols < rows) throw Error(Errc::ShapeError, "need 1 <= M <= N");
  const bool in_contract = cols >= 2 * rows;
  if (!in_contract && strict)
    throw Error(Errc::ShapeError, "optimality needs N >= 2M; got M=" + std::to_string(rows) +
                                      ", N=" + std::to_string(cols));
  std::vector<VandermondeBase> bases;
  for (std::size_t n = 0; n < cols; ++n)
    bases.emplace_back(RootOfUnity{static_cast<std::int64_t>(cols), static_cast<std::int64_t>(n)});
  Frame f = vandermonde(bases, rows);
  f.provenance.kind = "optimal_vandermonde";
  f.provenance.params["n"] = std::to_string(cols);
  f.provenance.params["optimality"] = in_contract ? "in_contract" : "out_of_contract";
  f.provenance.tight_bound = static_cast<double>(cols);
  return f;
}

}  // namespace sparkforge
