#include "confpred/estimators.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "confpred/bspline.hpp"
#include "confpred/rng.hpp"
#include "confpred/stats.hpp"

namespace confpred {

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::ols: return "ols";
    case EstimatorKind::ridge: return "ridge";
    case EstimatorKind::lasso: return "lasso";
    case EstimatorKind::elastic_net: return "elastic_net";
    case EstimatorKind::stepwise: return "stepwise";
    case EstimatorKind::kernel_smoother: return "kernel";
    case EstimatorKind::bspline_additive: return "bspline";
    case EstimatorKind::custom: return "custom";
  }
  return "?";
}

RegressionAlgorithm RegressionAlgorithm::ols() { return {}; }

RegressionAlgorithm RegressionAlgorithm::ridge(double lambda) {
  RegressionAlgorithm a;
  a.kind = EstimatorKind::ridge;
  a.lambda = lambda;
  return a;
}

RegressionAlgorithm RegressionAlgorithm::lasso(double lambda) {
  RegressionAlgorithm a;
  a.kind = EstimatorKind::lasso;
  a.lambda = lambda;
  a.mix = 1.0;
  return a;
}

RegressionAlgorithm RegressionAlgorithm::elastic_net(double lambda, double mix) {
  RegressionAlgorithm a;
  a.kind = EstimatorKind::elastic_net;
  a.lambda = lambda;
  a.mix = mix;
  return a;
}

RegressionAlgorithm RegressionAlgorithm::stepwise(int steps) {
  RegressionAlgorithm a;
  a.kind = EstimatorKind::stepwise;
  a.steps = steps;
  return a;
}

RegressionAlgorithm RegressionAlgorithm::kernel_smoother(double bandwidth) {
  RegressionAlgorithm a;
  a.kind = EstimatorKind::kernel_smoother;
  a.bandwidth = bandwidth;
  return a;
}

RegressionAlgorithm RegressionAlgorithm::bspline_additive(int df) {
  RegressionAlgorithm a;
  a.kind = EstimatorKind::bspline_additive;
  a.df = df;
  return a;
}

RegressionAlgorithm RegressionAlgorithm::custom(std::function<FittedModel(const DataSet&)> f) {
  RegressionAlgorithm a;
  a.kind = EstimatorKind::custom;
  a.custom_fit = std::move(f);
  return a;
}

std::string RegressionAlgorithm::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  switch (kind) {
    case EstimatorKind::ridge: os << "(lambda=" << lambda << ")"; break;
    case EstimatorKind::lasso: os << "(lambda=" << lambda << ")"; break;
    case EstimatorKind::elastic_net: os << "(lambda=" << lambda << ",mix=" << mix << ")"; break;
    case EstimatorKind::stepwise: os << "(k=" << steps << ")"; break;
    case EstimatorKind::kernel_smoother: os << "(h=" << bandwidth << ")"; break;
    case EstimatorKind::bspline_additive: os << "(df=" << df << ")"; break;
    default: break;
  }
  if (tuning) os << "+cv";
  return os.str();
}

namespace {

FittedModel linear_model(EstimatorKind kind, double intercept, Eigen::VectorXd coef,
                         double lambda, double mix) {
  FittedModel m;
  m.input_dim = coef.size();
  m.info.kind = kind;
  m.info.intercept = intercept;
  m.info.coef = coef;
  m.info.lambda = lambda;
  m.info.mix = mix;
  for (int j = 0; j < coef.size(); ++j)
    if (coef[j] != 0.0) m.info.selected.push_back(j);
  auto c = std::make_shared<const Eigen::VectorXd>(std::move(coef));
  m.eval = [c, intercept](const Eigen::VectorXd& x) { return intercept + c->dot(x); };
  return m;
}

struct Standardized {
  Eigen::MatrixXd z;        // centered, unit-variance columns (1/n convention)
  Eigen::VectorXd yc;       // centered response
  Eigen::VectorXd xmean, xsd;
  double ymean = 0.0;
  std::vector<char> active;  // false for (near-)constant columns
};

Standardized standardize(const DataSet& data) {
  const auto n = data.n();
  const auto d = data.dim();
  Standardized s;
  s.xmean = data.x.colwise().mean();
  s.z = data.x.rowwise() - s.xmean.transpose();
  s.xsd.resize(d);
  s.active.assign(static_cast<std::size_t>(d), 1);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double var = s.z.col(j).squaredNorm() / static_cast<double>(n);
    s.xsd[j] = std::sqrt(var);
    if (s.xsd[j] < 1e-12) {
      s.active[static_cast<std::size_t>(j)] = 0;
      s.z.col(j).setZero();
      s.xsd[j] = 1.0;
    } else {
      s.z.col(j) /= s.xsd[j];
    }
  }
  s.ymean = data.y.mean();
  s.yc = data.y.array() - s.ymean;
  return s;
}

FittedModel destandardized(EstimatorKind kind, const Standardized& s,
                           const Eigen::VectorXd& beta_std, double lambda, double mix) {
  Eigen::VectorXd coef = beta_std.array() / s.xsd.array();
  const double intercept = s.ymean - coef.dot(s.xmean);
  return linear_model(kind, intercept, std::move(coef), lambda, mix);
}

// ---------------------------------------------------------------------------
// OLS / ridge

void check_full_rank(const Eigen::LDLT<Eigen::MatrixXd>& ldlt) {
  const auto D = ldlt.vectorD();
  const double dmax = D.cwiseAbs().maxCoeff();
  if (!(dmax > 0.0) || D.minCoeff() <= dmax * 1e-12) throw numeric_error("rank deficient");
}

FittedModel fit_ols(const DataSet& data) {
  const auto n = data.n();
  const auto d = data.dim();
  if (n <= d) throw input_error("ols requires n > d; use ridge or lasso instead");
  Eigen::MatrixXd a(n, d + 1);
  a.col(0).setOnes();
  a.rightCols(d) = data.x;
  Eigen::MatrixXd gram = a.transpose() * a;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  check_full_rank(ldlt);
  const Eigen::VectorXd sol = ldlt.solve(a.transpose() * data.y);
  return linear_model(EstimatorKind::ols, sol[0], sol.tail(d), 0.0, 1.0);
}

FittedModel fit_ridge(const DataSet& data, double lambda) {
  if (lambda < 0.0) throw input_error("ridge: lambda must be >= 0");
  const auto n = data.n();
  const Eigen::VectorXd xmean = data.x.colwise().mean();
  const Eigen::MatrixXd xc = data.x.rowwise() - xmean.transpose();
  const double ymean = data.y.mean();
  const Eigen::VectorXd yc = data.y.array() - ymean;
  Eigen::MatrixXd gram = xc.transpose() * xc;
  gram.diagonal().array() += static_cast<double>(n) * lambda;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  check_full_rank(ldlt);
  const Eigen::VectorXd beta = ldlt.solve(xc.transpose() * yc);
  return linear_model(EstimatorKind::ridge, ymean - beta.dot(xmean), beta, lambda, 1.0);
}

// ---------------------------------------------------------------------------
// Lasso / elastic net by cyclic coordinate descent

constexpr int kMaxSweeps = 100000;
constexpr double kGapTol = 1e-8;

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// Duality gap of the elastic-net objective at beta, via the augmented-lasso
// dual with feasible point s*r/n.
double enet_duality_gap(const Eigen::MatrixXd& z, const Eigen::VectorXd& yc,
                        const Eigen::VectorXd& beta, const Eigen::VectorXd& r, double l1,
                        double l2) {
  const double n = static_cast<double>(yc.size());
  const Eigen::VectorXd corr = z.transpose() * r / n - l2 * beta;
  const double cmax = corr.cwiseAbs().maxCoeff();
  const double s = (l1 > 0.0 && cmax > l1) ? l1 / cmax : 1.0;
  const double rr = r.squaredNorm() + n * l2 * beta.squaredNorm();
  return (1.0 + s * s) / (2.0 * n) * rr - s / n * r.dot(yc) + l1 * beta.lpNorm<1>();
}

// Runs CD in the standardized coordinates; beta is the warm start in/out.
void coordinate_descent(const Standardized& s, double lambda, double mix,
                        Eigen::VectorXd& beta, Eigen::VectorXd& r) {
  const auto n = s.yc.size();
  const auto d = s.z.cols();
  const double l1 = lambda * mix;
  const double l2 = lambda * (1.0 - mix);
  const double nd = static_cast<double>(n);
  const double ynorm2 = s.yc.squaredNorm();
  const double gap_tol = kGapTol * std::max(1.0, ynorm2 / (2.0 * nd));
  const double grad_tol = 1e-10 * std::max(1.0, std::sqrt(ynorm2 / nd));

  r = s.yc - s.z * beta;
  double gap = kInf;
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    double max_delta = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!s.active[static_cast<std::size_t>(j)]) continue;
      const double bj = beta[j];
      const double rho = s.z.col(j).dot(r) / nd + bj;
      const double bnew = soft_threshold(rho, l1) / (1.0 + l2);
      if (bnew != bj) {
        r -= s.z.col(j) * (bnew - bj);
        beta[j] = bnew;
        max_delta = std::max(max_delta, std::abs(bnew - bj));
      }
    }
    const bool settled = max_delta <= 1e-13 * std::max(1.0, beta.cwiseAbs().maxCoeff());
    if (settled || sweep % 10 == 0) {
      if (l1 > 0.0) {
        gap = enet_duality_gap(s.z, s.yc, beta, r, l1, l2);
        if (gap <= gap_tol) return;
      } else {
        const double g = (s.z.transpose() * r / nd - l2 * beta).cwiseAbs().maxCoeff();
        if (g <= grad_tol) return;
        gap = g;
      }
      if (settled) return;  // numerically stationary
    }
  }
  std::ostringstream os;
  os << "coordinate descent did not converge after " << kMaxSweeps
     << " sweeps; duality gap = " << gap;
  throw numeric_error(os.str());
}

FittedModel fit_cd(const DataSet& data, EstimatorKind kind, double lambda, double mix) {
  if (lambda < 0.0) throw input_error("lasso/elastic_net: lambda must be >= 0");
  if (!(mix >= 0.0 && mix <= 1.0)) throw input_error("elastic_net: mix must be in [0,1]");
  const Standardized s = standardize(data);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(data.dim());
  Eigen::VectorXd r;
  coordinate_descent(s, lambda, mix, beta, r);
  return destandardized(kind, s, beta, lambda, mix);
}

// ---------------------------------------------------------------------------
// Forward stepwise

FittedModel fit_stepwise(const DataSet& data, int steps) {
  const auto d = data.dim();
  if (steps < 1 || steps > d) throw input_error("stepwise: need 1 <= k <= d");
  const Standardized s = standardize(data);
  const double nd = static_cast<double>(data.n());

  std::vector<int> selected;
  Eigen::VectorXd r = s.yc;
  Eigen::VectorXd beta_sel;
  for (int step = 0; step < steps; ++step) {
    int best = -1;
    double best_corr = 1e-12;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!s.active[static_cast<std::size_t>(j)]) continue;
      if (std::find(selected.begin(), selected.end(), static_cast<int>(j)) != selected.end())
        continue;
      const double c = std::abs(s.z.col(j).dot(r)) / nd;
      if (c > best_corr) {
        best_corr = c;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) break;  // residual orthogonal to every remaining column
    selected.push_back(best);
    Eigen::MatrixXd zs(data.n(), static_cast<Eigen::Index>(selected.size()));
    for (std::size_t c = 0; c < selected.size(); ++c) zs.col(static_cast<Eigen::Index>(c)) = s.z.col(selected[c]);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(zs.transpose() * zs);
    check_full_rank(ldlt);
    beta_sel = ldlt.solve(zs.transpose() * s.yc);
    r = s.yc - zs * beta_sel;
  }

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(d);
  for (std::size_t c = 0; c < selected.size(); ++c) beta[selected[c]] = beta_sel[static_cast<Eigen::Index>(c)];
  FittedModel m = destandardized(EstimatorKind::stepwise, s, beta, 0.0, 1.0);
  m.info.lambda = static_cast<double>(steps);
  return m;
}

// ---------------------------------------------------------------------------
// Nadaraya-Watson kernel smoother (Gaussian kernel); the "fit" stores the
// training sample.

FittedModel fit_kernel(const DataSet& data, double h) {
  if (!(h > 0.0)) throw input_error("kernel_smoother: bandwidth must be > 0");
  auto train = std::make_shared<const DataSet>(data);
  const double ymean = data.y.mean();
  FittedModel m;
  m.input_dim = data.dim();
  m.info.kind = EstimatorKind::kernel_smoother;
  m.info.lambda = h;
  m.info.intercept = ymean;
  m.eval = [train, h, ymean](const Eigen::VectorXd& x) {
    const auto n = train->n();
    // log-weights shifted by their max so the normalizer never underflows
    Eigen::VectorXd e(n);
    for (Eigen::Index i = 0; i < n; ++i)
      e[i] = -(train->x.row(i).transpose() - x).squaredNorm() / (2.0 * h * h);
    const double emax = e.maxCoeff();
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = std::exp(e[i] - emax);
      num += w * train->y[i];
      den += w;
    }
    return den > 0.0 ? num / den : ymean;
  };
  return m;
}

// ---------------------------------------------------------------------------
// Additive cubic B-spline regression: df basis functions per coordinate,
// knots at training quantiles, least squares on the concatenated basis.

FittedModel fit_bspline(const DataSet& data, int df) {
  const auto n = data.n();
  const auto d = data.dim();
  if (df < 3) throw input_error("bspline_additive: need df >= 3");
  auto bases = std::make_shared<std::vector<CubicBSplineBasis>>();
  bases->reserve(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j)
    bases->push_back(CubicBSplineBasis::from_quantiles(data.x.col(j), df));

  const Eigen::Index p = static_cast<Eigen::Index>(d) * df + 1;
  Eigen::MatrixXd design(n, p);
  design.col(0).setOnes();
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index c = 1;
    for (Eigen::Index j = 0; j < d; ++j) {
      design.row(i).segment(c, df) = (*bases)[static_cast<std::size_t>(j)].eval(data.x(i, j));
      c += df;
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  auto coef = std::make_shared<const Eigen::VectorXd>(qr.solve(data.y));

  FittedModel m;
  m.input_dim = d;
  m.info.kind = EstimatorKind::bspline_additive;
  m.info.lambda = df;
  m.info.intercept = (*coef)[0];
  m.eval = [bases, coef, d, df](const Eigen::VectorXd& x) {
    double out = (*coef)[0];
    Eigen::Index c = 1;
    for (Eigen::Index j = 0; j < d; ++j) {
      out += (*bases)[static_cast<std::size_t>(j)].eval(x[j]).dot(coef->segment(c, df));
      c += df;
    }
    return out;
  };
  return m;
}

// ---------------------------------------------------------------------------
// Cross-validation

RegressionAlgorithm with_primary(RegressionAlgorithm a, double v) {
  switch (a.kind) {
    case EstimatorKind::ridge:
    case EstimatorKind::lasso:
    case EstimatorKind::elastic_net: a.lambda = v; break;
    case EstimatorKind::kernel_smoother: a.bandwidth = v; break;
    case EstimatorKind::bspline_additive: a.df = std::max(3, static_cast<int>(std::lround(v))); break;
    case EstimatorKind::stepwise: a.steps = std::max(1, static_cast<int>(std::lround(v))); break;
    default: break;
  }
  a.tuning.reset();
  return a;
}

// Larger primary value means more regularization for penalties and
// bandwidths; fewer steps / lower df means more regularization for the rest.
bool more_regularized(EstimatorKind kind, double a, double b) {
  const bool larger_is_simpler = kind == EstimatorKind::ridge || kind == EstimatorKind::lasso ||
                                 kind == EstimatorKind::elastic_net ||
                                 kind == EstimatorKind::kernel_smoother;
  return larger_is_simpler ? a > b : a < b;
}

}  // namespace

RegressionAlgorithm cross_validate(const RegressionAlgorithm& alg, const DataSet& data) {
  if (!alg.tuning) throw input_error("cross_validate: algorithm has no tuning spec");
  if (alg.kind == EstimatorKind::ols || alg.kind == EstimatorKind::custom)
    throw input_error("cross_validate: " + to_string(alg.kind) + " has no tuning grid");
  const CrossValidation& cv = *alg.tuning;
  if (cv.grid.empty()) throw input_error("cross_validate: empty grid");
  if (cv.folds < 2) throw input_error("cross_validate: need folds >= 2");
  const int n = static_cast<int>(data.n());
  if (n < cv.folds) throw input_error("cross_validate: need n >= folds");

  std::vector<double> grid = cv.grid;
  std::sort(grid.begin(), grid.end(), std::greater<>());  // descending: warm-start order
  const int g = static_cast<int>(grid.size());

  CounterRng rng(cv.seed);
  const std::vector<int> perm = rng.permutation(n);
  std::vector<int> fold_of(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) fold_of[static_cast<std::size_t>(perm[i])] = i % cv.folds;

  const bool cd_kind = alg.kind == EstimatorKind::lasso || alg.kind == EstimatorKind::elastic_net;
  std::vector<double> err(static_cast<std::size_t>(g), 0.0);

  for (int f = 0; f < cv.folds; ++f) {
    std::vector<int> train_idx, test_idx;
    for (int i = 0; i < n; ++i)
      (fold_of[static_cast<std::size_t>(i)] == f ? test_idx : train_idx).push_back(i);
    const DataSet train = data.subset(train_idx);
    const DataSet test = data.subset(test_idx);

    if (cd_kind) {
      // one standardization per fold, warm start down the penalty path
      const Standardized s = standardize(train);
      Eigen::VectorXd beta = Eigen::VectorXd::Zero(train.dim());
      Eigen::VectorXd r;
      for (int k = 0; k < g; ++k) {
        coordinate_descent(s, grid[static_cast<std::size_t>(k)], alg.mix, beta, r);
        const FittedModel m =
            destandardized(alg.kind, s, beta, grid[static_cast<std::size_t>(k)], alg.mix);
        err[static_cast<std::size_t>(k)] += (test.y - m.predict(test.x)).squaredNorm();
      }
    } else {
      for (int k = 0; k < g; ++k) {
        const FittedModel m = fit(with_primary(alg, grid[static_cast<std::size_t>(k)]), train);
        err[static_cast<std::size_t>(k)] += (test.y - m.predict(test.x)).squaredNorm();
      }
    }
  }

  int best = 0;
  for (int k = 1; k < g; ++k) {
    const double a = err[static_cast<std::size_t>(k)], b = err[static_cast<std::size_t>(best)];
    if (a < b * (1.0 - 1e-12)) {
      best = k;
    } else if (a <= b * (1.0 + 1e-12) &&
               more_regularized(alg.kind, grid[static_cast<std::size_t>(k)],
                                grid[static_cast<std::size_t>(best)])) {
      best = k;
    }
  }
  return with_primary(alg, grid[static_cast<std::size_t>(best)]);
}

FittedModel fit(const RegressionAlgorithm& alg, const DataSet& data) {
  if (alg.tuning) return fit(cross_validate(alg, data), data);
  switch (alg.kind) {
    case EstimatorKind::ols: return fit_ols(data);
    case EstimatorKind::ridge: return fit_ridge(data, alg.lambda);
    case EstimatorKind::lasso: return fit_cd(data, alg.kind, alg.lambda, 1.0);
    case EstimatorKind::elastic_net: return fit_cd(data, alg.kind, alg.lambda, alg.mix);
    case EstimatorKind::stepwise: return fit_stepwise(data, alg.steps);
    case EstimatorKind::kernel_smoother: return fit_kernel(data, alg.bandwidth);
    case EstimatorKind::bspline_additive: return fit_bspline(data, alg.df);
    case EstimatorKind::custom:
      if (!alg.custom_fit) throw input_error("custom estimator without fit function");
      return alg.custom_fit(data);
  }
  throw input_error("unknown estimator kind");
}

// ---------------------------------------------------------------------------
// Parametric intervals

namespace {

struct ParametricContext {
  Eigen::LDLT<Eigen::MatrixXd> factor;  // OLS: (A'A); ridge: (G + n*lambda*I)
  Eigen::MatrixXd gram;                 // ridge only: G
  Eigen::VectorXd xmean;                // ridge only
  double sigma2 = 0.0;
  double inv_n = 0.0;
  bool is_ridge = false;
};

ParametricContext parametric_context(const FittedModel& model, const DataSet& data) {
  const auto n = data.n();
  const auto d = data.dim();
  if (model.info.kind != EstimatorKind::ols && model.info.kind != EstimatorKind::ridge)
    throw input_error("parametric_interval: model must be ols or ridge");
  if (model.input_dim != d) throw input_error("parametric_interval: dimension mismatch");
  if (n <= d + 1) throw input_error("parametric_interval: requires n > d + 1");

  ParametricContext ctx;
  const double rss = (data.y - model.predict(data.x)).squaredNorm();
  ctx.sigma2 = rss / static_cast<double>(n - d - 1);
  if (model.info.kind == EstimatorKind::ols) {
    Eigen::MatrixXd a(n, d + 1);
    a.col(0).setOnes();
    a.rightCols(d) = data.x;
    ctx.factor.compute(a.transpose() * a);
    check_full_rank(ctx.factor);
  } else {
    ctx.is_ridge = true;
    ctx.xmean = data.x.colwise().mean();
    const Eigen::MatrixXd xc = data.x.rowwise() - ctx.xmean.transpose();
    ctx.gram = xc.transpose() * xc;
    Eigen::MatrixXd reg = ctx.gram;
    reg.diagonal().array() += static_cast<double>(n) * model.info.lambda;
    ctx.factor.compute(reg);
    check_full_rank(ctx.factor);
    ctx.inv_n = 1.0 / static_cast<double>(n);
  }
  return ctx;
}

Interval parametric_one(const ParametricContext& ctx, const FittedModel& model,
                        const Eigen::VectorXd& x, double z) {
  double quad;
  if (ctx.is_ridge) {
    const Eigen::VectorXd xc = x - ctx.xmean;
    const Eigen::VectorXd u = ctx.factor.solve(xc);  // (G + n*lambda*I)^{-1} (x - xbar)
    quad = ctx.inv_n + u.dot(ctx.gram * u);
  } else {
    Eigen::VectorXd a(x.size() + 1);
    a[0] = 1.0;
    a.tail(x.size()) = x;
    quad = a.dot(ctx.factor.solve(a));
  }
  const double mu = model(x);
  const double hw = z * std::sqrt(ctx.sigma2 * (1.0 + std::max(quad, 0.0)));
  return Interval::centered(mu, hw);
}

}  // namespace

Interval parametric_interval(const FittedModel& model, const DataSet& data,
                             const Eigen::VectorXd& x, MiscoverageLevel alpha) {
  const ParametricContext ctx = parametric_context(model, data);
  return parametric_one(ctx, model, x, normal_abs_upper_quantile(alpha.alpha));
}

std::vector<Interval> parametric_intervals(const FittedModel& model, const DataSet& data,
                                           const Eigen::MatrixXd& xs, MiscoverageLevel alpha) {
  const ParametricContext ctx = parametric_context(model, data);
  const double z = normal_abs_upper_quantile(alpha.alpha);
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(xs.rows()));
  for (Eigen::Index i = 0; i < xs.rows(); ++i)
    out.push_back(parametric_one(ctx, model, xs.row(i).transpose(), z));
  return out;
}

double cd_kkt_residual(const RegressionAlgorithm& alg, const DataSet& data,
                       const FittedModel& model) {
  if (alg.kind != EstimatorKind::lasso && alg.kind != EstimatorKind::elastic_net)
    throw input_error("cd_kkt_residual: lasso/elastic_net only");
  const Standardized s = standardize(data);
  // recover standardized coefficients from the original-scale ones
  Eigen::VectorXd beta = model.info.coef.array() * s.xsd.array();
  const Eigen::VectorXd r = s.yc - s.z * beta;
  const double n = static_cast<double>(data.n());
  const double l1 = alg.lambda * alg.mix;
  const double l2 = alg.lambda * (1.0 - alg.mix);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < data.dim(); ++j) {
    if (!s.active[static_cast<std::size_t>(j)]) continue;
    const double grad = s.z.col(j).dot(r) / n - l2 * beta[j];  // -d(smooth)/d(beta_j)
    if (beta[j] == 0.0) {
      worst = std::max(worst, std::abs(grad) - l1);
    } else {
      worst = std::max(worst, std::abs(grad - l1 * (beta[j] > 0 ? 1.0 : -1.0)));
    }
  }
  return worst;
}

}  // namespace confpred
