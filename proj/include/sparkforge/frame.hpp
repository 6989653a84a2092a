#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparkforge/error.hpp"
#include "sparkforge/exact_matrix.hpp"

namespace sparkforge {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kOperatorTol = 1e-9;
inline constexpr double kEntryTol = 1e-12;

/// How a frame was built and which structural properties it claims.
struct Provenance {
  std::string kind = "input";
  std::map<std::string, std::string> params;
  bool unit_norm = false;
  std::optional<double> tight_bound;  // FF* = bound * I
  bool parseval = false;
};

/// M x N synthesis matrix whose columns are the frame elements.
struct Frame {
  ComplexMatrix entries;
  Provenance provenance;

  // Exact cyclotomic copy of the frame up to positive diagonal scalings:
  // entries = diag(shadow_row_scale) * eval(shadow) * diag(shadow_col_scale).
  // Empty scale vectors mean all ones.
  std::optional<CycMatrix> exact_shadow;
  std::vector<double> shadow_row_scale;
  std::vector<double> shadow_col_scale;

  std::size_t rows() const { return static_cast<std::size_t>(entries.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(entries.cols()); }
};

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
  return true;
}

/// Max-abs deviation of the numeric entries from the scaled shadow, or nullopt
/// when the frame has no shadow.
inline std::optional<double> shadow_deviation(const Frame& f) {
  if (!f.exact_shadow) return std::nullopt;
  const CycMatrix& s = *f.exact_shadow;
  if (s.rows() != f.rows() || s.cols() != f.cols())
    throw Error(Errc::ShapeError, "shadow shape differs from frame");
  double worst = 0;
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (std::size_t c = 0; c < s.cols(); ++c) {
      double scale = 1;
      if (!f.shadow_row_scale.empty()) scale *= f.shadow_row_scale[r];
      if (!f.shadow_col_scale.empty()) scale *= f.shadow_col_scale[c];
      const auto expect = scale * s(r, c).evaluate();
      worst = std::max(worst, std::abs(expect - f.entries(static_cast<Eigen::Index>(r),
                                                           static_cast<Eigen::Index>(c))));
    }
  return worst;
}

/// Largest deviation of a column norm from 1.
inline double unit_norm_deviation(const ComplexMatrix& m) {
  double worst = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) worst = std::max(worst, std::abs(m.col(c).norm() - 1));
  return worst;
}

/// max |FF* - bound I| entrywise.
inline double tightness_deviation(const ComplexMatrix& m, double bound) {
  const ComplexMatrix g = m * m.adjoint();
  return (g - bound * ComplexMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

/// Checks the numeric claims recorded in the provenance.
inline bool satisfies_provenance(const Frame& f, double op_tol = kOperatorTol) {
  if (f.provenance.unit_norm && unit_norm_deviation(f.entries) > op_tol) return false;
  if (f.provenance.tight_bound && tightness_deviation(f.entries, *f.provenance.tight_bound) > op_tol)
    return false;
  if (f.provenance.parseval && tightness_deviation(f.entries, 1.0) > op_tol) return false;
  return true;
}

}  // namespace sparkforge
