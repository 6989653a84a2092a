#pragma once

// Spark and full-spark certification.
//
// spark() climbs k = 1, 2, ... and stops at the first size with a
// rank-deficient column subset. is_full_spark() only looks at k = M and
// tests determinants. Both report the lexicographically smallest witness, so
// certificates do not depend on the thread count.

#include <gmpxx.h>

#include <Eigen/SVD>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sparkforge/error.hpp"
#include "sparkforge/exact_matrix.hpp"
#include "sparkforge/frame.hpp"
#include "sparkforge/subsets.hpp"

namespace sparkforge {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

enum class SparkMode { Exact, Numeric };

inline const char* mode_name(SparkMode m) { return m == SparkMode::Exact ? "exact" : "numeric"; }

struct SweepOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = default_threads();
};

struct SparkCertificate {
  std::size_t rows = 0;
  std::size_t cols = 0;
  // N+1 when no column subset is dependent (only possible for N <= M).
  std::size_t spark = 0;
  // Set by is_full_spark() when it stops on a singular M x M block: the true
  // spark is then only known to be <= M.
  bool spark_is_upper_bound = false;
  std::optional<Combination> witness;
  std::uint64_t checked_subsets = 0;
  SparkMode mode = SparkMode::Exact;

  bool full_spark() const { return !spark_is_upper_bound && spark == rows + 1; }
};

namespace detail {

template <typename Deficient>
SparkCertificate climb_spark(std::size_t rows, std::size_t cols, const SweepOptions& opt,
                             SparkMode mode, Deficient&& deficient) {
  SparkCertificate cert;
  cert.rows = rows;
  cert.cols = cols;
  cert.mode = mode;
  const std::size_t top = std::min(cols, rows);
  for (std::size_t k = 1; k <= top; ++k) {
    const std::uint64_t level = binomial(cols, k);
    if (level > opt.budget || cert.checked_subsets > opt.budget - level)
      throw BudgetExceeded(k, "spark sweep needs " + std::to_string(level) + " subsets of size " +
                                  std::to_string(k) + " beyond " +
                                  std::to_string(cert.checked_subsets) + " already checked; budget " +
                                  std::to_string(opt.budget));
    auto hit = find_first_subset(cols, k, opt.threads,
                                 [&](const Combination& c) { return deficient(c); });
    if (hit) {
      cert.spark = k;
      cert.witness = hit->subset;
      cert.checked_subsets += hit->rank + 1;
      return cert;
    }
    cert.checked_subsets += level;
  }
  if (cols <= rows) {
    cert.spark = cols + 1;
    return cert;
  }
  // Any M+1 vectors in an M-dimensional space are dependent.
  if (cert.checked_subsets >= opt.budget)
    throw BudgetExceeded(rows + 1, "budget exhausted before the trivial level");
  Combination w(rows + 1);
  for (std::size_t i = 0; i <= rows; ++i) w[i] = i;
  cert.spark = rows + 1;
  cert.witness = std::move(w);
  cert.checked_subsets += 1;
  return cert;
}

}  // namespace detail

/// Exact spark of an integer or cyclotomic matrix.
template <typename T>
SparkCertificate spark(const Matrix<T>& a, const SweepOptions& opt = {}) {
  if (a.rows() == 0 || a.cols() == 0) throw Error(Errc::ShapeError, "empty matrix");
  if (a.is_zero_matrix()) throw Error(Errc::ZeroMatrix, "spark of the zero matrix");
  return detail::climb_spark(a.rows(), a.cols(), opt, SparkMode::Exact, [&](const Combination& c) {
    return rank_exact(a.select_columns(c)) < c.size();
  });
}

/// Determinant sweep over every M x M column submatrix.
template <typename T>
SparkCertificate is_full_spark(const Matrix<T>& a, const SweepOptions& opt = {}) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == 0) throw Error(Errc::ShapeError, "matrix has no rows");
  if (m > n)
    throw Error(Errc::ShapeError,
                "full spark needs M <= N, got " + std::to_string(m) + "x" + std::to_string(n));
  const std::uint64_t total = binomial(n, m);
  if (total > opt.budget)
    throw BudgetExceeded(m, "C(" + std::to_string(n) + "," + std::to_string(m) + ") = " +
                                std::to_string(total) + " exceeds budget " +
                                std::to_string(opt.budget));
  SparkCertificate cert;
  cert.rows = m;
  cert.cols = n;
  auto hit = find_first_subset(n, m, opt.threads, [&](const Combination& c) {
    return is_zero(det_exact(a.select_columns(c), std::max(kDefaultSideLimit, m)));
  });
  if (hit) {
    cert.spark = m;
    cert.spark_is_upper_bound = true;
    cert.witness = hit->subset;
    cert.checked_subsets = hit->rank + 1;
  } else {
    cert.spark = m + 1;
    cert.checked_subsets = total;
  }
  return cert;
}

/// Floating-point spark screen. A column subset counts as dependent when its
/// smallest singular value is <= tol * sigma_max(F) * max(M, N). This is a
/// screen, not a proof.
inline SparkCertificate numeric_spark_probe(const ComplexMatrix& f, double tol = 1e-10,
                                            const SweepOptions& opt = {}) {
  if (!all_finite(f)) throw Error(Errc::NonFiniteEntry, "frame has NaN or infinite entries");
  const auto m = static_cast<std::size_t>(f.rows());
  const auto n = static_cast<std::size_t>(f.cols());
  if (m == 0 || n == 0) throw Error(Errc::ShapeError, "empty matrix");
  const double sigma_max = Eigen::JacobiSVD<ComplexMatrix>(f).singularValues()(0);
  const double threshold = tol * sigma_max * static_cast<double>(std::max(m, n));
  return detail::climb_spark(m, n, opt, SparkMode::Numeric, [&](const Combination& c) {
    ComplexMatrix sub(f.rows(), static_cast<Eigen::Index>(c.size()));
    for (std::size_t j = 0; j < c.size(); ++j)
      sub.col(static_cast<Eigen::Index>(j)) = f.col(static_cast<Eigen::Index>(c[j]));
    const auto sv = Eigen::JacobiSVD<ComplexMatrix>(sub).singularValues();
    return sv(sv.size() - 1) <= threshold;
  });
}

inline SparkCertificate numeric_spark_probe(const Frame& f, double tol = 1e-10,
                                            const SweepOptions& opt = {}) {
  return numeric_spark_probe(f.entries, tol, opt);
}

struct ProbeOptions {
  std::uint64_t column_cap = 1'000'000;
  bool allow_cap = true;
  SweepOptions sweep;
};

struct ProbeResult {
  bool spark_exceeds_k = false;
  std::size_t k = 0;
  mpz_class requested_columns;  // M^3 2^(N+1)
  std::uint64_t used_columns = 0;
  bool capped = false;
  std::size_t trials = 0;       // requested
  std::size_t trials_run = 0;
  std::uint64_t seed = 0;
  // Trial whose compression came out full spark, which proves Spark(F) > K.
  std::optional<std::size_t> proof_trial;
  // First failing trial: the sampled Vandermonde columns (bases are index+1)
  // and the singular K x K block of the compressed matrix.
  std::optional<std::size_t> failed_trial;
  std::optional<std::vector<std::uint64_t>> failed_projection;
  std::optional<Combination> failed_columns;
};

/// Randomized test of Spark(F) > K: compress F with K random columns of the
/// integer Vandermonde frame with bases 1..P and check that the K x N result
/// is full spark. K dependent columns of F stay dependent after compression,
/// so one full spark compression proves Spark(F) > K and the answer is true
/// as soon as any trial succeeds. `false` means every trial failed, which
/// proves nothing by itself unless spark() corroborates it.
inline ProbeResult compressed_spark_probe(const IntMatrix& f, std::size_t k, std::size_t trials,
                                          std::uint64_t seed, const ProbeOptions& opt = {}) {
  const std::size_t m = f.rows();
  const std::size_t n = f.cols();
  if (k < 1 || k > m || k > n)
    throw Error(Errc::ShapeError, "probe needs 1 <= K <= min(M, N); K = " + std::to_string(k));
  if (trials < 1) throw Error(Errc::InvalidInput, "probe needs at least one trial");

  ProbeResult res;
  res.k = k;
  res.trials = trials;
  res.seed = seed;
  mpz_class p = m;
  p = p * p * p;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), n + 1);
  res.requested_columns = p;
  if (p > mpz_class(std::to_string(opt.column_cap))) {
    if (!opt.allow_cap)
      throw Error(Errc::CapExceeded, "P = " + p.get_str() + " exceeds cap " +
                                         std::to_string(opt.column_cap));
    res.capped = true;
    res.used_columns = opt.column_cap;
  } else {
    res.used_columns = p.get_ui();
  }
  if (res.used_columns < k) throw Error(Errc::CapExceeded, "column cap smaller than K");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, res.used_columns - 1);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::uint64_t> cols;
    while (cols.size() < k) {
      const std::uint64_t c = pick(rng);
      if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
    }
    std::sort(cols.begin(), cols.end());
    // Row i of H_K^* F is sum_m b_i^m F[m, :] with b_i = cols[i] + 1.
    IntMatrix compressed(k, n, mpz_class(0));
    for (std::size_t i = 0; i < k; ++i) {
      const mpz_class base = mpz_class(std::to_string(cols[i] + 1));
      mpz_class power = 1;
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < n; ++j) compressed(i, j) += power * f(r, j);
        power *= base;
      }
    }
    const auto cert = is_full_spark(compressed, opt.sweep);
    res.trials_run = t + 1;
    if (cert.full_spark()) {
      res.spark_exceeds_k = true;
      res.proof_trial = t;
      return res;
    }
    if (!res.failed_trial) {
      res.failed_trial = t;
      res.failed_projection = cols;
      res.failed_columns = cert.witness;
    }
  }
  return res;
}

}  // namespace sparkforge
