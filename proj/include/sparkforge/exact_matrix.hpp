#pragma once

// Dense exact matrices over Z (fraction-free elimination) and over Q(w_N)
// (field elimination). Pivot rule for both: first nonzero entry in the column.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sparkforge/cyclotomic.hpp"
#include "sparkforge/error.hpp"

namespace sparkforge {

inline bool is_zero(const mpz_class& x) { return x == 0; }
inline bool is_zero(const ExactScalar& x) { return x.is_zero(); }

template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;

  /// rows x cols matrix filled with `fill`; `order` is the cyclotomic order of
  /// the entries (1 for integer and rational matrices).
  Matrix(std::size_t rows, std::size_t cols, const T& fill, std::int64_t order = 1)
      : rows_(rows), cols_(cols), order_(order), data_(rows * cols, fill) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data, std::int64_t order = 1)
      : rows_(rows), cols_(cols), order_(order), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw Error(Errc::ShapeError, "entry count " + std::to_string(data_.size()) +
                                        " does not match " + std::to_string(rows_) + "x" +
                                        std::to_string(cols_));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t order() const { return order_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<T>& data() const { return data_; }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!sparkforge::is_zero(x)) return false;
    return true;
  }

  Matrix select_columns(std::span<const std::size_t> cols) const {
    std::vector<T> out;
    out.reserve(rows_ * cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c : cols) {
        if (c >= cols_) throw Error(Errc::IndexOutOfRange, "column " + std::to_string(c));
        out.push_back((*this)(r, c));
      }
    return Matrix(rows_, cols.size(), std::move(out), order_);
  }

  Matrix select_rows(std::span<const std::size_t> rows) const {
    std::vector<T> out;
    out.reserve(rows.size() * cols_);
    for (std::size_t r : rows) {
      if (r >= rows_) throw Error(Errc::IndexOutOfRange, "row " + std::to_string(r));
      for (std::size_t c = 0; c < cols_; ++c) out.push_back((*this)(r, c));
    }
    return Matrix(rows.size(), cols_, std::move(out), order_);
  }

  Matrix transpose() const {
    std::vector<T> out;
    out.reserve(data_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return Matrix(cols_, rows_, std::move(out), order_);
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::ShapeError, "product shape mismatch");
    Matrix out(a.rows_, b.cols_, zero_like(a), a.order_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        T acc = zero_like(a);
        for (std::size_t k = 0; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
        out(i, j) = std::move(acc);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.order_ == b.order_ && a.data_ == b.data_;
  }

 private:
  static T zero_like(const Matrix& m) {
    if constexpr (std::is_same_v<T, ExactScalar>)
      return ExactScalar::zero(m.order_);
    else
      return T(0);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::int64_t order_ = 1;
  std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;
using CycMatrix = Matrix<ExactScalar>;

/// Embeds an integer matrix into Q(w_N) with N = order.
inline CycMatrix to_cyclotomic(const IntMatrix& a, std::int64_t order = 1) {
  std::vector<ExactScalar> out;
  out.reserve(a.data().size());
  for (const auto& x : a.data()) out.emplace_back(order, x);
  return CycMatrix(a.rows(), a.cols(), std::move(out), order);
}

inline std::vector<std::complex<double>> evaluate(const CycMatrix& a) {
  std::vector<std::complex<double>> out;
  out.reserve(a.data().size());
  for (const auto& x : a.data()) out.push_back(x.evaluate());
  return out;
}

inline constexpr std::size_t kDefaultSideLimit = 64;

namespace detail {

inline void check_det_input(std::size_t rows, std::size_t cols, std::size_t side_limit) {
  if (rows != cols)
    throw Error(Errc::ShapeError, "determinant of non-square " + std::to_string(rows) + "x" +
                                      std::to_string(cols) + " matrix");
  if (rows > side_limit)
    throw Error(Errc::SideLimitExceeded,
                "side " + std::to_string(rows) + " > limit " + std::to_string(side_limit));
}

// Bareiss forward elimination in place; returns the rank. When the matrix is
// square and nonsingular the last pivot is the determinant up to `sign`.
inline std::size_t bareiss(std::vector<std::vector<mpz_class>>& a, std::size_t cols, int& sign) {
  const std::size_t rows = a.size();
  mpz_class prev = 1;
  std::size_t r = 0;
  sign = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = a[i][j] * a[r][c];
        mpz_submul(t.get_mpz_t(), a[i][c].get_mpz_t(), a[r][j].get_mpz_t());
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline std::vector<std::vector<mpz_class>> to_rows(const IntMatrix& m) {
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

// Gaussian elimination over Q(w_N) in place; returns the rank and the product
// of pivots (with sign) in `det`.
inline std::size_t field_eliminate(std::vector<std::vector<ExactScalar>>& a, std::size_t cols,
                                   std::int64_t order, ExactScalar& det) {
  const std::size_t rows = a.size();
  det = ExactScalar::one(order);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      det = -det;
    }
    det = det * a[r][c];
    const ExactScalar inv = a[r][c].inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c].is_zero()) continue;
      const ExactScalar f = a[i][c] * inv;
      for (std::size_t j = c + 1; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] = a[i][j] - f * a[r][j];
      a[i][c] = ExactScalar::zero(order);
    }
    ++r;
  }
  return r;
}

inline std::vector<std::vector<ExactScalar>> to_rows(const CycMatrix& m) {
  std::vector<std::vector<ExactScalar>> a(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    a[i].reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) a[i].push_back(m(i, j));
  }
  return a;
}

}  // namespace detail

/// Exact determinant over Z by fraction-free (Bareiss) elimination.
inline mpz_class det_exact(const IntMatrix& m, std::size_t side_limit = kDefaultSideLimit) {
  detail::check_det_input(m.rows(), m.cols(), side_limit);
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  auto a = detail::to_rows(m);
  int sign = 1;
  if (detail::bareiss(a, n, sign) < n) return 0;
  return sign * a[n - 1][n - 1];
}

/// Exact determinant over Q(w_N) by Gaussian elimination in the fraction field.
inline ExactScalar det_exact(const CycMatrix& m, std::size_t side_limit = kDefaultSideLimit) {
  detail::check_det_input(m.rows(), m.cols(), side_limit);
  if (m.rows() == 0) return ExactScalar::one(m.order());
  auto a = detail::to_rows(m);
  ExactScalar det;
  if (detail::field_eliminate(a, m.cols(), m.order(), det) < m.rows())
    return ExactScalar::zero(m.order());
  return det;
}

inline std::size_t rank_exact(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto a = detail::to_rows(m);
  int sign = 1;
  return detail::bareiss(a, m.cols(), sign);
}

inline std::size_t rank_exact(const CycMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto a = detail::to_rows(m);
  ExactScalar det;
  return detail::field_eliminate(a, m.cols(), m.order(), det);
}

}  // namespace sparkforge
