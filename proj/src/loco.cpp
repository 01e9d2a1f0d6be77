#include "confpred/loco.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "confpred/stats.hpp"

namespace confpred {

namespace {

// Refit with covariate j removed; when j was the only column the refit
// degenerates to the intercept-only model (the sample mean).
FittedModel fit_without(const RegressionAlgorithm& alg, const DataSet& data, int j) {
  if (data.dim() == 1) {
    FittedModel m;
    m.input_dim = 0;
    m.info.kind = EstimatorKind::custom;
    m.info.intercept = data.y.mean();
    const double mean = data.y.mean();
    m.eval = [mean](const Eigen::VectorXd&) { return mean; };
    return m;
  }
  return fit(alg, data.drop_column(j));
}

}  // namespace

Interval excess_error_image(const Interval& c, double mu_full, double mu_drop) {
  if (c.is_empty()) return Interval::empty();
  const auto g = [&](double y) { return std::abs(y - mu_drop) - std::abs(y - mu_full); };
  double lo = kInf, hi = -kInf;
  const auto take = [&](double y) {
    const double v = g(y);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  take(c.lo);
  take(c.hi);
  for (double kink : {mu_full, mu_drop})
    if (c.contains(kink)) take(kink);
  return Interval{lo, hi};
}

Eigen::VectorXd LocoLocal::drop_coord(const Eigen::VectorXd& x, int j) const {
  Eigen::VectorXd out(x.size() - 1);
  out << x.head(j), x.tail(x.size() - 1 - j);
  return out;
}

LocoLocal::LocoLocal(const RegressionAlgorithm& alg, const DataSet& data, MiscoverageLevel alpha,
                     const SplitConfig& cfg, std::vector<int> covariates)
    : covariates_(std::move(covariates)) {
  if (covariates_.empty()) {
    covariates_.resize(static_cast<std::size_t>(data.dim()));
    std::iota(covariates_.begin(), covariates_.end(), 0);
  }
  for (int j : covariates_)
    if (j < 0 || j >= data.dim()) throw input_error("loco: covariate index out of range");

  band_ = roo_split_conformal(alg, data, alpha, cfg);

  const auto [i1, i2] = split_indices(static_cast<int>(data.n()), cfg);
  const std::vector<int>* fold_rows[2] = {&i1, &i2};
  drop_models_.resize(2);
  for (int k = 0; k < 2; ++k) {
    const DataSet fold_data = data.subset(*fold_rows[k]);
    for (int j : covariates_)
      drop_models_[static_cast<std::size_t>(k)].push_back(fit_without(alg, fold_data, j));
  }
}

ExcessErrorInterval LocoLocal::at_train(int i, int jpos) const {
  const int fold = band_.point_fold[static_cast<std::size_t>(i)];
  const Eigen::VectorXd x = band_.train_x.row(i).transpose();
  const int j = covariates_[static_cast<std::size_t>(jpos)];
  ExcessErrorInterval out;
  out.j = j;
  out.at = i;
  const Interval c = band_.evaluate_train(i);
  const double mu_full = band_.mean_models[static_cast<std::size_t>(fold)](x);
  const double mu_drop =
      drop_models_[static_cast<std::size_t>(fold)][static_cast<std::size_t>(jpos)](drop_coord(x, j));
  if (!c.is_finite()) {
    out.w = Interval::whole();
    out.unbounded = true;
    return out;
  }
  out.w = excess_error_image(c, mu_full, mu_drop);
  return out;
}

ExcessErrorInterval LocoLocal::at_point(const Eigen::VectorXd& x, int jpos) const {
  const int j = covariates_[static_cast<std::size_t>(jpos)];
  ExcessErrorInterval out;
  out.j = j;
  const double mu_full = band_.mean_models[0](x);
  const Interval c = Interval::centered(mu_full, band_.fold_halfwidths[0]);
  const double mu_drop = drop_models_[0][static_cast<std::size_t>(jpos)](drop_coord(x, j));
  if (!c.is_finite()) {
    out.w = Interval::whole();
    out.unbounded = true;
    return out;
  }
  out.w = excess_error_image(c, mu_full, mu_drop);
  return out;
}

double LocoLocal::excess_error(const Eigen::VectorXd& x, double y, int jpos) const {
  const int j = covariates_[static_cast<std::size_t>(jpos)];
  const double mu_full = band_.mean_models[0](x);
  const double mu_drop = drop_models_[0][static_cast<std::size_t>(jpos)](drop_coord(x, j));
  return std::abs(y - mu_drop) - std::abs(y - mu_full);
}

std::vector<ExcessErrorInterval> loco_local(const RegressionAlgorithm& alg, const DataSet& data,
                                            MiscoverageLevel alpha, const SplitConfig& cfg,
                                            std::vector<int> covariates) {
  const LocoLocal model(alg, data, alpha, cfg, std::move(covariates));
  std::vector<ExcessErrorInterval> out;
  out.reserve(static_cast<std::size_t>(data.n()) * model.covariates().size());
  for (int i = 0; i < data.n(); ++i)
    for (std::size_t jp = 0; jp < model.covariates().size(); ++jp)
      out.push_back(model.at_train(i, static_cast<int>(jp)));
  return out;
}

LocoReport loco_global(const RegressionAlgorithm& alg, const DataSet& data,
                       MiscoverageLevel alpha, const SplitConfig& cfg,
                       const LocoSelection& selection) {
  const auto [i1, i2] = split_indices(static_cast<int>(data.n()), cfg);
  const DataSet d1 = data.subset(i1);
  const DataSet d2 = data.subset(i2);

  LocoReport report;
  report.alpha = alpha.alpha;
  report.n_calibration = static_cast<int>(d2.n());

  if (selection.kind == LocoSelection::Kind::lasso_cv) {
    RegressionAlgorithm sel;
    if (selection.selector) {
      sel = *selection.selector;
    } else {
      // default selector: lasso, lambda by 10-fold CV on a log-spaced grid
      std::vector<double> grid;
      for (int g = 0; g < 20; ++g) grid.push_back(std::pow(10.0, 0.5 - 2.5 * g / 19.0));
      sel = RegressionAlgorithm::lasso(0).with_cv({10, grid, cfg.seed ^ 0x5e1ec7ull});
    }
    report.tested = fit(sel, d1).info.selected;
  } else if (selection.fixed.empty()) {
    report.tested.resize(static_cast<std::size_t>(data.dim()));
    std::iota(report.tested.begin(), report.tested.end(), 0);
  } else {
    report.tested = selection.fixed;
    for (int j : report.tested)
      if (j < 0 || j >= data.dim()) throw input_error("loco_global: covariate out of range");
  }
  const std::size_t S = report.tested.size();
  report.adjusted_alpha = S > 0 ? alpha.alpha / static_cast<double>(S) : alpha.alpha;
  if (S == 0) return report;

  const FittedModel full = fit(alg, d1);
  const Eigen::VectorXd full_abs_err = (d2.y - full.predict(d2.x)).cwiseAbs();
  const double n2 = static_cast<double>(d2.n());

  for (int j : report.tested) {
    const FittedModel dropped = fit_without(alg, d1, j);
    Eigen::VectorXd drop_pred(d2.n());
    if (data.dim() == 1)
      drop_pred.setConstant(dropped.info.intercept);
    else
      drop_pred = dropped.predict(d2.drop_column(j).x);
    const Eigen::VectorXd delta = (d2.y - drop_pred).cwiseAbs() - full_abs_err;
    const std::vector<double> dv(delta.data(), delta.data() + delta.size());

    LocoCovariateReport r;
    r.j = j;
    r.theta_hat = delta.mean();
    const double var = (delta.array() - r.theta_hat).square().sum() / std::max(n2 - 1.0, 1.0);
    const double sd = std::sqrt(var);
    r.se = sd / std::sqrt(n2);
    if (sd == 0.0) {
      r.z_interval = Interval{r.theta_hat, r.theta_hat};
      r.z_p_one_sided = r.theta_hat > 0 ? 0.0 : 1.0;
      r.z_p_two_sided = r.theta_hat == 0.0 ? 1.0 : 0.0;
    } else {
      const double zq = normal_abs_upper_quantile(report.adjusted_alpha);
      r.z_interval = Interval{r.theta_hat - zq * r.se, r.theta_hat + zq * r.se};
      const double zstat = r.theta_hat / r.se;
      r.z_p_one_sided = 1.0 - normal_cdf(zstat);
      r.z_p_two_sided = std::min(1.0, 2.0 * (1.0 - normal_cdf(std::abs(zstat))));
    }
    r.sign = sign_test(dv);
    r.wilcoxon = wilcoxon_signed_rank(dv);
    const WilcoxonInterval wi = wilcoxon_median_interval(dv, report.adjusted_alpha);
    r.median_interval = wi.interval;
    r.median_estimate = wi.estimate;
    report.per_covariate.push_back(std::move(r));
  }
  return report;
}

}  // namespace confpred
