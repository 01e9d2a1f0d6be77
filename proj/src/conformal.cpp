#include "confpred/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace confpred {

std::string to_string(BandVariant v) {
  switch (v) {
    case BandVariant::naive: return "naive";
    case BandVariant::split: return "split";
    case BandVariant::jackknife: return "jackknife";
    case BandVariant::roo: return "roo";
    case BandVariant::roo_relaxed: return "roo_relaxed";
  }
  return "?";
}

TrialGrid default_trial_grid(const DataSet& data, int count) {
  const double ymin = data.y.minCoeff();
  const double ymax = data.y.maxCoeff();
  double r = ymax - ymin;
  if (r <= 0.0) r = std::max(1.0, std::abs(ymin));
  return TrialGrid(ymin - r, ymax + r, count);
}

namespace {

struct SpreadFit {
  FittedModel model;
  double floor = 0.0;
  double at(const Eigen::VectorXd& x) const { return std::max(model(x), floor); }
};

// Conditional MAD estimate: regress |residual| on x with the designated
// algorithm, clamped below at 1e-6 times the mean absolute residual.
SpreadFit fit_spread(const ConformityScore& score, const DataSet& data,
                     const Eigen::VectorXd& abs_resid) {
  SpreadFit s;
  s.model = fit(*score.mad_algorithm, DataSet(data.x, abs_resid));
  s.floor = 1e-6 * abs_resid.mean();
  if (s.floor <= 0.0) s.floor = 1e-300;  // exact-interpolation corner: keep scores finite
  return s;
}

}  // namespace

double ConformalBand::spread_at(int fold, const Eigen::VectorXd& x) const {
  if (spread_models.empty()) return 1.0;
  return std::max(spread_models[static_cast<std::size_t>(fold)](x),
                  spread_floors[static_cast<std::size_t>(fold)]);
}

Interval ConformalBand::evaluate(const Eigen::VectorXd& x) const {
  int fold = 0;
  double halfwidth = fold_halfwidths[0];
  if (variant == BandVariant::roo || variant == BandVariant::roo_relaxed) {
    for (Eigen::Index i = 0; i < train_x.rows(); ++i) {
      if (train_x.row(i).transpose() == x) return evaluate_train(static_cast<int>(i));
    }
    // unseen point: fold-0 model with its relaxed halfwidth
  }
  const double mu = mean_models[static_cast<std::size_t>(fold)](x);
  const double rho = spread_at(fold, x);
  return Interval::centered(mu, rho * halfwidth);
}

Interval ConformalBand::evaluate_train(int i) const {
  const int fold = point_fold[static_cast<std::size_t>(i)];
  const Eigen::VectorXd x = train_x.row(i).transpose();
  const double mu = mean_models[static_cast<std::size_t>(fold)](x);
  const double rho = spread_at(fold, x);
  return Interval::centered(mu, rho * point_halfwidth[static_cast<std::size_t>(i)]);
}

std::vector<Interval> ConformalBand::train_intervals() const {
  std::vector<Interval> out;
  out.reserve(point_halfwidth.size());
  for (std::size_t i = 0; i < point_halfwidth.size(); ++i)
    out.push_back(evaluate_train(static_cast<int>(i)));
  return out;
}

Interval evaluate_band(const ConformalBand& band, const Eigen::VectorXd& x) {
  if (x.size() != band.mean_models.front().input_dim)
    throw input_error("evaluate_band: dimension mismatch");
  return band.evaluate(x);
}

ConformalBand naive_band(const RegressionAlgorithm& alg, const DataSet& data,
                         MiscoverageLevel alpha) {
  ConformalBand band;
  band.variant = BandVariant::naive;
  band.alpha = alpha.alpha;
  band.mean_models.push_back(fit(alg, data));
  const Eigen::VectorXd r = absolute_residuals(band.mean_models[0], data);
  band.fold_halfwidths.push_back(finite_sample_quantile(
      std::vector<double>(r.data(), r.data() + r.size()), alpha, QuantileRule::plain));
  return band;
}

// ---------------------------------------------------------------------------
// Full conformal

namespace {

// Scores of the augmented sample under the refit estimator; the trial point
// is the last row.
Eigen::VectorXd augmented_scores(const RegressionAlgorithm& alg, const DataSet& aug,
                                 const ConformityScore& score, double trial_y) {
  FittedModel mu;
  try {
    mu = fit(alg, aug);
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "full conformal: fit failed at trial value y=" << trial_y << ": " << e.what();
    throw numeric_error(os.str());
  }
  Eigen::VectorXd r = absolute_residuals(mu, aug);
  if (score.weighted()) {
    const SpreadFit rho = fit_spread(score, aug, r);
    for (Eigen::Index i = 0; i < r.size(); ++i) r[i] /= rho.at(aug.x.row(i).transpose());
  }
  return r;
}

bool accepts(const RegressionAlgorithm& alg, const DataSet& data, const Eigen::VectorXd& x,
             double y, MiscoverageLevel alpha, const ConformityScore& score) {
  const DataSet aug = data.augmented(x, y);
  const Eigen::VectorXd r = augmented_scores(alg, aug, score, y);
  const int n = static_cast<int>(data.n());
  int rank = 1;
  for (int i = 0; i < n; ++i)
    if (r[i] <= r[n]) ++rank;
  return rank <= augmented_rank(n, alpha.alpha);
}

}  // namespace

bool full_conformal_accepts(const RegressionAlgorithm& alg, const DataSet& data,
                            const Eigen::VectorXd& x, double y, MiscoverageLevel alpha,
                            const ConformityScore& score) {
  return accepts(alg, data, x, y, alpha, score);
}

PredictionSet full_conformal(const RegressionAlgorithm& alg, const DataSet& data,
                             const Eigen::VectorXd& x, MiscoverageLevel alpha,
                             const TrialGrid& grid, const ConformityScore& score) {
  if (x.size() != data.dim()) throw input_error("full_conformal: dimension mismatch");
  PredictionSet out;
  out.grid_step = grid.step();
  for (int i = 0; i < grid.count; ++i) {
    const double y = grid.at(i);
    if (accepts(alg, data, x, y, alpha, score)) out.points.push_back(y);
  }
  if (!out.points.empty()) out.hull = Interval{out.points.front(), out.points.back()};
  return out;
}

// ---------------------------------------------------------------------------
// Split conformal and multi-split

ConformalBand split_conformal(const RegressionAlgorithm& alg, const DataSet& data,
                              MiscoverageLevel alpha, const SplitConfig& cfg,
                              const ConformityScore& score) {
  const auto [i1, i2] = split_indices(static_cast<int>(data.n()), cfg);
  const DataSet d1 = data.subset(i1);
  const DataSet d2 = data.subset(i2);

  ConformalBand band;
  band.variant = BandVariant::split;
  band.alpha = alpha.alpha;
  band.mean_models.push_back(fit(alg, d1));

  Eigen::VectorXd scores = absolute_residuals(band.mean_models[0], d2);
  if (score.weighted()) {
    const Eigen::VectorXd r1 = absolute_residuals(band.mean_models[0], d1);
    SpreadFit rho = fit_spread(score, d1, r1);
    for (Eigen::Index i = 0; i < scores.size(); ++i)
      scores[i] /= rho.at(d2.x.row(i).transpose());
    band.spread_models.push_back(rho.model);
    band.spread_floors.push_back(rho.floor);
  }
  band.fold_halfwidths.push_back(
      finite_sample_quantile(std::vector<double>(scores.data(), scores.data() + scores.size()),
                             alpha, QuantileRule::augmented));
  return band;
}

Interval MultiSplitBand::evaluate(const Eigen::VectorXd& x) const {
  Interval cur = Interval::whole();
  for (const auto& b : parts) {
    cur = Interval::intersect(cur, b.evaluate(x));
    if (cur.is_empty()) return cur;
  }
  return cur;
}

MultiSplitBand multi_split_conformal(const RegressionAlgorithm& alg, const DataSet& data,
                                     MiscoverageLevel alpha, int n_splits,
                                     const std::vector<std::uint64_t>& seeds, double ratio) {
  if (n_splits < 1) throw input_error("multi_split_conformal: need N >= 1");
  if (static_cast<int>(seeds.size()) != n_splits)
    throw input_error("multi_split_conformal: need one seed per split");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
    throw input_error("multi_split_conformal: seeds must be distinct");

  MultiSplitBand band;
  band.alpha = alpha.alpha;
  const MiscoverageLevel each(alpha.alpha / n_splits);
  for (int j = 0; j < n_splits; ++j)
    band.parts.push_back(split_conformal(alg, data, each, SplitConfig{seeds[static_cast<std::size_t>(j)], ratio}));
  return band;
}

// ---------------------------------------------------------------------------
// Jackknife

ConformalBand jackknife_band(const RegressionAlgorithm& alg, const DataSet& data,
                             MiscoverageLevel alpha) {
  const int n = static_cast<int>(data.n());
  if (n < 2) throw input_error("jackknife_band: need n >= 2");
  std::vector<double> loo(static_cast<std::size_t>(n));
  std::vector<int> idx(static_cast<std::size_t>(n) - 1);
  for (int i = 0; i < n; ++i) {
    int c = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) idx[static_cast<std::size_t>(c++)] = j;
    const FittedModel m = fit(alg, data.subset(idx));
    loo[static_cast<std::size_t>(i)] = std::abs(data.y[i] - m(data.x.row(i).transpose()));
  }
  ConformalBand band;
  band.variant = BandVariant::jackknife;
  band.alpha = alpha.alpha;
  band.mean_models.push_back(fit(alg, data));
  band.fold_halfwidths.push_back(finite_sample_quantile(loo, alpha, QuantileRule::plain));
  return band;
}

// ---------------------------------------------------------------------------
// Rank-one-out split conformal

namespace {

ConformalBand roo_build(const RegressionAlgorithm& alg, const DataSet& data,
                        MiscoverageLevel alpha, const SplitConfig& cfg, bool relaxed) {
  const int n = static_cast<int>(data.n());
  if (n < 4) throw input_error("roo_split_conformal: need n >= 4");
  const auto [i1, i2] = split_indices(n, cfg);

  ConformalBand band;
  band.variant = relaxed ? BandVariant::roo_relaxed : BandVariant::roo;
  band.alpha = alpha.alpha;
  band.train_x = data.x;
  band.point_fold.assign(static_cast<std::size_t>(n), 0);
  band.point_halfwidth.assign(static_cast<std::size_t>(n), 0.0);
  band.mean_models.push_back(fit(alg, data.subset(i1)));
  band.mean_models.push_back(fit(alg, data.subset(i2)));
  band.fold_halfwidths.assign(2, kInf);

  // fold k's model scores its complement: model 0 <- trained on i1, scores i2
  const std::vector<int>* comp[2] = {&i2, &i1};
  for (int k = 0; k < 2; ++k) {
    const std::vector<int>& pts = *comp[k];
    const int m_count = static_cast<int>(pts.size());
    std::vector<double> resid(pts.size());
    for (std::size_t t = 0; t < pts.size(); ++t)
      resid[t] = std::abs(data.y[pts[t]] -
                          band.mean_models[static_cast<std::size_t>(k)](data.x.row(pts[t]).transpose()));
    std::vector<double> sorted = resid;
    std::sort(sorted.begin(), sorted.end());

    const int m = plain_rank(m_count, alpha.alpha);
    const int m_relaxed = m + 1;
    band.fold_halfwidths[static_cast<std::size_t>(k)] =
        m_relaxed <= m_count ? sorted[static_cast<std::size_t>(m_relaxed) - 1] : kInf;

    for (std::size_t t = 0; t < pts.size(); ++t) {
      const int i = pts[t];
      band.point_fold[static_cast<std::size_t>(i)] = k;
      double di;
      if (relaxed) {
        di = band.fold_halfwidths[static_cast<std::size_t>(k)];
      } else {
        // rank of the m-th smallest among the other complement residuals:
        // drop this point's (first matching) entry from the sorted array
        const auto p = static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), resid[t]) - sorted.begin());
        if (p <= m - 1)
          di = m <= m_count - 1 ? sorted[static_cast<std::size_t>(m)] : kInf;
        else
          di = sorted[static_cast<std::size_t>(m) - 1];
      }
      band.point_halfwidth[static_cast<std::size_t>(i)] = di;
    }
  }
  return band;
}

}  // namespace

ConformalBand roo_split_conformal(const RegressionAlgorithm& alg, const DataSet& data,
                                  MiscoverageLevel alpha, const SplitConfig& cfg) {
  return roo_build(alg, data, alpha, cfg, false);
}

ConformalBand roo_relaxed(const RegressionAlgorithm& alg, const DataSet& data,
                          MiscoverageLevel alpha, const SplitConfig& cfg) {
  return roo_build(alg, data, alpha, cfg, true);
}

}  // namespace confpred
