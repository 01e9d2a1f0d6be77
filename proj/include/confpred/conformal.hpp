#pragma once

#include <optional>
#include <vector>

#include "confpred/core.hpp"
#include "confpred/estimators.hpp"

namespace confpred {

/// Conformity score: plain absolute residual |y - mu(x)|, or the
/// locally-weighted variant |y - mu(x)| / rho(x) where rho is a conditional
/// MAD estimate fit by mad_algorithm on the absolute residuals.
struct ConformityScore {
  enum class Kind { absolute, locally_weighted };
  Kind kind = Kind::absolute;
  std::optional<RegressionAlgorithm> mad_algorithm;

  static ConformityScore absolute() { return {}; }
  static ConformityScore locally_weighted(RegressionAlgorithm mad_alg) {
    ConformityScore s;
    s.kind = Kind::locally_weighted;
    s.mad_algorithm = std::move(mad_alg);
    return s;
  }
  bool weighted() const { return kind == Kind::locally_weighted; }
};

/// Equally spaced trial values for full conformal inference.
struct TrialGrid {
  double lo = 0.0;
  double hi = 1.0;
  int count = 200;

  TrialGrid(double lo_in, double hi_in, int count_in) : lo(lo_in), hi(hi_in), count(count_in) {
    if (!(lo < hi) || count < 2) throw input_error("TrialGrid: need lo < hi and count >= 2");
  }
  double step() const { return (hi - lo) / (count - 1); }
  double at(int i) const { return i == count - 1 ? hi : lo + step() * i; }
};

/// Default grid: [min(y) - r, max(y) + r] with r = range(y).
TrialGrid default_trial_grid(const DataSet& data, int count = 200);

enum class BandVariant { naive, split, jackknife, roo, roo_relaxed };

std::string to_string(BandVariant v);

/// A constructed prediction band: fitted center model(s), optional local
/// spread model(s), and calibrated halfwidth(s). Evaluating at x yields
///   [mu(x) - rho(x)*d, mu(x) + rho(x)*d]
/// with rho == 1 for absolute scores. For the rank-one-out variants there
/// is one model per fold, a per-training-point halfwidth, and a per-fold
/// relaxed halfwidth used at points outside the training set.
struct ConformalBand {
  BandVariant variant = BandVariant::split;
  double alpha = 0.1;
  std::vector<FittedModel> mean_models;
  std::vector<FittedModel> spread_models;  // empty, or one per mean model
  std::vector<double> spread_floors;       // lower clamps for the spread fits
  std::vector<double> fold_halfwidths;     // one per mean model

  // rank-one-out bookkeeping (empty for other variants)
  Eigen::MatrixXd train_x;
  std::vector<int> point_fold;
  std::vector<double> point_halfwidth;

  /// Spread multiplier for a fold at x (1 for absolute scores).
  double spread_at(int fold, const Eigen::VectorXd& x) const;

  Interval evaluate(const Eigen::VectorXd& x) const;

  /// In-sample interval at training point i (roo variants).
  Interval evaluate_train(int i) const;
  std::vector<Interval> train_intervals() const;
};

/// Band value at x; for roo variants an exact match against a stored
/// training row uses that point's halfwidth, any other x the relaxed
/// fold halfwidth.
Interval evaluate_band(const ConformalBand& band, const Eigen::VectorXd& x);

/// Residual-quantile band with no data splitting or augmentation: center fit
/// on all data, halfwidth the plain-rule quantile of the in-sample absolute
/// residuals. No coverage guarantee; baseline only.
ConformalBand naive_band(const RegressionAlgorithm& alg, const DataSet& data,
                         MiscoverageLevel alpha);

/// Full conformal prediction set at x: every grid value y is accepted iff
/// its score ranks within ceil((1-alpha)(n+1)) among the scores of the
/// estimator refit on the data augmented with (x, y).
PredictionSet full_conformal(const RegressionAlgorithm& alg, const DataSet& data,
                             const Eigen::VectorXd& x, MiscoverageLevel alpha,
                             const TrialGrid& grid,
                             const ConformityScore& score = ConformityScore::absolute());

/// Exact membership test of a single trial value (no grid discretization).
bool full_conformal_accepts(const RegressionAlgorithm& alg, const DataSet& data,
                            const Eigen::VectorXd& x, double y, MiscoverageLevel alpha,
                            const ConformityScore& score = ConformityScore::absolute());

/// Split conformal: fit on fold I1, calibrate the halfwidth as the k-th
/// smallest score on fold I2, k = ceil((|I2|+1)(1-alpha)); +inf halfwidth
/// when k overflows.
ConformalBand split_conformal(const RegressionAlgorithm& alg, const DataSet& data,
                              MiscoverageLevel alpha, const SplitConfig& cfg,
                              const ConformityScore& score = ConformityScore::absolute());

/// Intersection of N split conformal bands, each built at level alpha/N.
struct MultiSplitBand {
  double alpha = 0.1;
  std::vector<ConformalBand> parts;
  Interval evaluate(const Eigen::VectorXd& x) const;
};

MultiSplitBand multi_split_conformal(const RegressionAlgorithm& alg, const DataSet& data,
                                     MiscoverageLevel alpha, int n_splits,
                                     const std::vector<std::uint64_t>& seeds, double ratio = 0.5);

/// Jackknife band: halfwidth is the plain-rule quantile of the n
/// leave-one-out absolute residuals; the returned center is fit on all rows.
ConformalBand jackknife_band(const RegressionAlgorithm& alg, const DataSet& data,
                             MiscoverageLevel alpha);

/// Rank-one-out split conformal: valid in-sample intervals. Each fold's
/// model scores the complementary points; point i's halfwidth is the m-th
/// smallest of the other complement residuals, m = ceil(|complement|(1-alpha)),
/// computed from one sorted array per fold with an O(1) rank adjustment.
ConformalBand roo_split_conformal(const RegressionAlgorithm& alg, const DataSet& data,
                                  MiscoverageLevel alpha, const SplitConfig& cfg);

/// Conservative relaxation: one halfwidth per fold, rank m+1, so every
/// interval contains its roo counterpart.
ConformalBand roo_relaxed(const RegressionAlgorithm& alg, const DataSet& data,
                          MiscoverageLevel alpha, const SplitConfig& cfg);

}  // namespace confpred
