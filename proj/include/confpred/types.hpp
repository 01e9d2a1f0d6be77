#pragma once

#include <Eigen/Core>
#include <limits>
#include <vector>

#include "confpred/errors.hpp"

namespace confpred {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval with possibly infinite endpoints. The empty interval is
/// canonically (+inf, -inf); all other values must satisfy lo <= hi.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  static Interval whole() { return {-kInf, kInf}; }
  static Interval empty() { return {kInf, -kInf}; }
  static Interval centered(double mid, double halfwidth) {
    if (halfwidth == kInf) return whole();
    return {mid - halfwidth, mid + halfwidth};
  }

  bool is_empty() const { return lo > hi; }
  bool contains(double y) const { return y >= lo && y <= hi; }
  bool is_finite() const { return !is_empty() && std::isfinite(lo) && std::isfinite(hi); }
  double length() const { return is_empty() ? 0.0 : hi - lo; }

  static Interval intersect(const Interval& a, const Interval& b) {
    Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    return r.lo > r.hi ? empty() : r;
  }

  /// Superset comparison, treating empty as subset of everything.
  bool contains_interval(const Interval& other) const {
    if (other.is_empty()) return true;
    return lo <= other.lo && hi >= other.hi;
  }
};

/// Regression data: n x d feature matrix plus length-n response.
/// All entries must be finite; n >= 1, d >= 1.
struct DataSet {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;

  DataSet() = default;
  DataSet(Eigen::MatrixXd x_in, Eigen::VectorXd y_in) : x(std::move(x_in)), y(std::move(y_in)) {
    if (x.rows() != y.size()) throw input_error("DataSet: row count of x must equal length of y");
    if (x.rows() < 1 || x.cols() < 1) throw input_error("DataSet: need n >= 1 and d >= 1");
    if (!x.allFinite() || !y.allFinite()) throw input_error("DataSet: entries must be finite");
  }

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index dim() const { return x.cols(); }

  /// Rows given by indices, in order.
  DataSet subset(const std::vector<int>& idx) const {
    Eigen::MatrixXd xs(static_cast<Eigen::Index>(idx.size()), x.cols());
    Eigen::VectorXd ys(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      xs.row(static_cast<Eigen::Index>(i)) = x.row(idx[i]);
      ys[static_cast<Eigen::Index>(i)] = y[idx[i]];
    }
    return DataSet(std::move(xs), std::move(ys));
  }

  /// Copy with column j removed (LOCO refits).
  DataSet drop_column(int j) const {
    if (j < 0 || j >= x.cols()) throw input_error("drop_column: index out of range");
    Eigen::MatrixXd xs(x.rows(), x.cols() - 1);
    xs << x.leftCols(j), x.rightCols(x.cols() - 1 - j);
    return DataSet(std::move(xs), y);
  }

  /// Copy with one extra row appended.
  DataSet augmented(const Eigen::VectorXd& xnew, double ynew) const {
    if (xnew.size() != x.cols()) throw input_error("augmented: dimension mismatch");
    Eigen::MatrixXd xs(x.rows() + 1, x.cols());
    xs << x, xnew.transpose();
    Eigen::VectorXd ys(y.size() + 1);
    ys << y, ynew;
    return DataSet(std::move(xs), std::move(ys));
  }
};

/// Nominal miscoverage level alpha in (0, 1).
struct MiscoverageLevel {
  double alpha;
  explicit MiscoverageLevel(double a) : alpha(a) {
    if (!(a > 0.0 && a < 1.0)) throw input_error("MiscoverageLevel: alpha must be in (0,1)");
  }
};

/// Seeded random data split; ratio is the fraction assigned to the fitting
/// fold I1 (|I1| = floor(ratio*n), clamped so both folds are nonempty).
struct SplitConfig {
  std::uint64_t seed = 0;
  double ratio = 0.5;
};

/// Accepted trial values from full conformal inference on a finite grid,
/// together with their convex hull. The hull is the headline interval;
/// contiguous() flags whether the accepted set had gaps on the grid.
struct PredictionSet {
  std::vector<double> points;  // sorted accepted trial values
  Interval hull = Interval::empty();
  double grid_step = 0.0;

  bool empty() const { return points.empty(); }

  bool contiguous() const {
    for (std::size_t i = 1; i < points.size(); ++i)
      if (points[i] - points[i - 1] > 1.5 * grid_step) return false;
    return true;
  }
};

}  // namespace confpred
