#include "confpred/bspline.hpp"

#include <algorithm>
#include <cmath>

#include "confpred/errors.hpp"

namespace confpred {

CubicBSplineBasis::CubicBSplineBasis(double lo, double hi, std::vector<double> interior) {
  if (!(lo < hi)) throw input_error("CubicBSplineBasis: need lo < hi");
  std::sort(interior.begin(), interior.end());
  for (double t : interior)
    if (t < lo || t > hi) throw input_error("CubicBSplineBasis: interior knot outside [lo, hi]");
  knots_.assign(4, lo);
  knots_.insert(knots_.end(), interior.begin(), interior.end());
  knots_.insert(knots_.end(), 4, hi);
  n_basis_ = static_cast<int>(knots_.size()) - 4;
}

CubicBSplineBasis CubicBSplineBasis::from_quantiles(const Eigen::VectorXd& values, int df) {
  if (df < 3) throw input_error("CubicBSplineBasis: need df >= 3");
  std::vector<double> v(values.data(), values.data() + values.size());
  std::sort(v.begin(), v.end());
  double lo = v.front(), hi = v.back();
  if (lo == hi) {  // degenerate column; widen so the basis stays defined
    lo -= 0.5;
    hi += 0.5;
  }
  const int k = df - 3;  // interior knot count
  std::vector<double> interior(k);
  const double n1 = static_cast<double>(v.size()) - 1.0;
  for (int i = 0; i < k; ++i) {
    const double p = static_cast<double>(i + 1) / (k + 1);
    const double h = n1 * p;
    const auto idx = static_cast<std::size_t>(std::floor(h));
    const double frac = h - std::floor(h);
    const double q = idx + 1 < v.size() ? v[idx] + frac * (v[idx + 1] - v[idx]) : v[idx];
    interior[i] = std::clamp(q, lo, hi);
  }
  return CubicBSplineBasis(lo, hi, std::move(interior));
}

Eigen::VectorXd CubicBSplineBasis::eval(double x) const {
  const int order = 4;
  const double lo = knots_.front(), hi = knots_.back();
  x = std::clamp(x, lo, hi);

  // Cox-de Boor over all basis functions; 0/0 conventions -> 0.
  const int m = static_cast<int>(knots_.size());
  std::vector<double> b(m - 1, 0.0);
  for (int i = 0; i < m - 1; ++i) {
    const bool last_span = knots_[i] < hi && knots_[i + 1] >= hi;
    if ((x >= knots_[i] && x < knots_[i + 1]) || (x >= hi && last_span)) b[i] = 1.0;
  }
  for (int k = 2; k <= order; ++k) {
    for (int i = 0; i + k < m; ++i) {
      const double den1 = knots_[i + k - 1] - knots_[i];
      const double den2 = knots_[i + k] - knots_[i + 1];
      double v = 0.0;
      if (den1 > 0.0) v += (x - knots_[i]) / den1 * b[i];
      if (den2 > 0.0) v += (knots_[i + k] - x) / den2 * b[i + 1];
      b[i] = v;
    }
  }
  Eigen::VectorXd out(n_basis_ - 1);
  for (int i = 1; i < n_basis_; ++i) out[i - 1] = b[i];
  return out;
}

}  // namespace confpred
