#pragma once

#include <Eigen/Core>
#include <vector>

namespace confpred {

/// Cubic B-spline basis on one coordinate.
///
/// The knot vector is [lo x4, interior..., hi x4]; eval() returns all basis
/// functions except the first (the dropped one is absorbed by the intercept
/// in regression use), so a basis with k interior knots has k+3 columns.
/// Inputs outside [lo, hi] are clamped.
class CubicBSplineBasis {
 public:
  CubicBSplineBasis(double lo, double hi, std::vector<double> interior_knots);

  /// Basis with `df` columns (df >= 3), interior knots at the quantiles of
  /// the given sample values.
  static CubicBSplineBasis from_quantiles(const Eigen::VectorXd& values, int df);

  int size() const { return n_basis_ - 1; }
  Eigen::VectorXd eval(double x) const;

 private:
  std::vector<double> knots_;  // full knot vector, multiplicity 4 at the ends
  int n_basis_;
};

}  // namespace confpred
