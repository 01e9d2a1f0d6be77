#pragma once

#include <optional>
#include <vector>

#include "confpred/conformal.hpp"
#include "confpred/ranktests.hpp"

namespace confpred {

/// Exact image of y -> |y - mu_drop| - |y - mu_full| over the interval c.
/// The map is piecewise linear with kinks at the two predictions, so the
/// image is determined by the endpoint and clipped-kink values.
Interval excess_error_image(const Interval& c, double mu_full, double mu_drop);

/// Per-point variable-importance interval: the image W_j of the prediction
/// interval at one point under the excess-error map for covariate j.
struct ExcessErrorInterval {
  int j = 0;            // covariate index
  int at = -1;          // training row, or -1 for an external point
  Interval w;
  bool unbounded = false;  // the underlying prediction interval was infinite
};

/// Fold models and dropped-covariate refits backing local LOCO inference;
/// built on rank-one-out split conformal so the per-point intervals are
/// valid in-sample.
class LocoLocal {
 public:
  LocoLocal(const RegressionAlgorithm& alg, const DataSet& data, MiscoverageLevel alpha,
            const SplitConfig& cfg, std::vector<int> covariates);

  const std::vector<int>& covariates() const { return covariates_; }
  const ConformalBand& band() const { return band_; }

  /// W_j at training point i; jpos indexes into covariates().
  ExcessErrorInterval at_train(int i, int jpos) const;

  /// W_j at a new feature vector (relaxed fold halfwidth).
  ExcessErrorInterval at_point(const Eigen::VectorXd& x, int jpos) const;

  /// Excess error realized by (x, y) for covariate jpos, using the same
  /// fold models as at_point.
  double excess_error(const Eigen::VectorXd& x, double y, int jpos) const;

 private:
  std::vector<int> covariates_;
  ConformalBand band_;  // per-point roo band; fold halfwidths are the relaxed ones
  std::vector<std::vector<FittedModel>> drop_models_;  // [fold][jpos]

  Eigen::VectorXd drop_coord(const Eigen::VectorXd& x, int j) const;
};

/// All per-point intervals W_j(X_i), i over the sample and j over the given
/// covariates (all of them when the list is empty).
std::vector<ExcessErrorInterval> loco_local(const RegressionAlgorithm& alg, const DataSet& data,
                                            MiscoverageLevel alpha, const SplitConfig& cfg,
                                            std::vector<int> covariates = {});

/// Which covariates loco_global tests: a fixed set, or the active set of a
/// cross-validated lasso fit on the first fold.
struct LocoSelection {
  enum class Kind { fixed, lasso_cv };
  Kind kind = Kind::fixed;
  std::vector<int> fixed;                      // kind == fixed; empty = all covariates
  std::optional<RegressionAlgorithm> selector; // kind == lasso_cv; defaults to lasso+CV

  static LocoSelection all() { return {}; }
  static LocoSelection fixed_set(std::vector<int> js) {
    LocoSelection s;
    s.fixed = std::move(js);
    return s;
  }
  static LocoSelection lasso_cv(std::optional<RegressionAlgorithm> sel = std::nullopt) {
    LocoSelection s;
    s.kind = Kind::lasso_cv;
    s.selector = std::move(sel);
    return s;
  }
};

struct LocoCovariateReport {
  int j = 0;
  double theta_hat = 0.0;   // mean excess error on the held-out fold
  double se = 0.0;          // s_j / sqrt(|I2|)
  Interval z_interval;      // level 1 - alpha/|S|
  double z_p_one_sided = 1.0;
  double z_p_two_sided = 1.0;
  SignTestResult sign;
  WilcoxonResult wilcoxon;
  Interval median_interval;  // Wilcoxon inversion at level 1 - alpha/|S|
  double median_estimate = 0.0;
};

struct LocoReport {
  std::vector<int> tested;   // S
  double alpha = 0.1;
  double adjusted_alpha = 0.1;  // alpha / |S|
  int n_calibration = 0;        // |I2|
  std::vector<LocoCovariateReport> per_covariate;
};

/// Split the data, fit the full model and each dropped-covariate refit on
/// I1 (re-resolving any cross-validated tuning per refit), then test the
/// excess errors on I2 with z, sign, and Wilcoxon machinery at the
/// Bonferroni-adjusted level alpha/|S|.
LocoReport loco_global(const RegressionAlgorithm& alg, const DataSet& data,
                       MiscoverageLevel alpha, const SplitConfig& cfg,
                       const LocoSelection& selection = LocoSelection::all());

}  // namespace confpred
