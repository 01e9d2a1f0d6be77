#include <doctest.h>

#include <cmath>

#include "confpred/estimators.hpp"
#include "confpred/rng.hpp"
#include "confpred/stats.hpp"
#include "helpers.hpp"

using namespace confpred;

namespace {

DataSet linear_dataset(int n, int d, std::uint64_t seed, double noise_sd = 1.0) {
  CounterRng rng(seed);
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = rng.normal();
    y[i] = 2.0 * x(i, 0) - 1.0 * x(i, std::min(1, d - 1)) + 0.5 + noise_sd * rng.normal();
  }
  return DataSet(std::move(x), std::move(y));
}

}  // namespace

TEST_CASE("lasso with lambda=0 matches OLS on well-conditioned data") {
  const DataSet data = linear_dataset(80, 5, 11);
  const FittedModel ols = fit(RegressionAlgorithm::ols(), data);
  const FittedModel l0 = fit(RegressionAlgorithm::lasso(0.0), data);
  CHECK((ols.info.coef - l0.info.coef).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(std::abs(ols.info.intercept - l0.info.intercept) < 1e-6);
}

TEST_CASE("lasso at lambda >= lambda_max zeroes every coefficient") {
  const DataSet data = linear_dataset(60, 6, 3);
  // subgradient bound at beta = 0 on the standardized scale
  const Eigen::VectorXd yc = data.y.array() - data.y.mean();
  double lambda_max = 0.0;
  for (int j = 0; j < data.dim(); ++j) {
    Eigen::VectorXd zc = data.x.col(j).array() - data.x.col(j).mean();
    zc /= std::sqrt(zc.squaredNorm() / static_cast<double>(data.n()));
    lambda_max = std::max(lambda_max, std::abs(zc.dot(yc)) / static_cast<double>(data.n()));
  }
  const FittedModel m = fit(RegressionAlgorithm::lasso(lambda_max * 1.0001), data);
  CHECK(m.info.coef.cwiseAbs().maxCoeff() == 0.0);
  CHECK(m.info.selected.empty());
  // just below the bound at least one coefficient activates
  const FittedModel m2 = fit(RegressionAlgorithm::lasso(lambda_max * 0.95), data);
  CHECK(m2.info.coef.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("ridge coefficients shrink monotonically with lambda") {
  Eigen::MatrixXd x(30, 1);
  Eigen::VectorXd y(30);
  CounterRng rng(5);
  for (int i = 0; i < 30; ++i) {
    x(i, 0) = rng.normal();
    y[i] = x(i, 0);
  }
  const DataSet data(x, y);
  double prev = kInf;
  for (double lambda : {0.0, 0.1, 1.0, 10.0, 100.0}) {
    const double b = fit(RegressionAlgorithm::ridge(lambda), data).info.coef[0];
    CHECK(b >= 0.0);
    CHECK(b <= prev + 1e-12);
    prev = b;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("elastic net with mix=1 equals lasso") {
  const DataSet data = linear_dataset(50, 4, 7);
  const FittedModel a = fit(RegressionAlgorithm::lasso(0.1), data);
  const FittedModel b = fit(RegressionAlgorithm::elastic_net(0.1, 1.0), data);
  CHECK((a.info.coef - b.info.coef).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("coordinate descent satisfies the KKT conditions at convergence") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const DataSet data = linear_dataset(60, 12, seed, 2.0);
    for (double lambda : {0.05, 0.3}) {
      for (double mix : {1.0, 0.5}) {
        const RegressionAlgorithm alg = RegressionAlgorithm::elastic_net(lambda, mix);
        const FittedModel m = fit(alg, data);
        CHECK(cd_kkt_residual(alg, data, m) <= 1e-6);
      }
    }
  }
}

TEST_CASE("fits are invariant to row permutation") {
  const DataSet data = linear_dataset(40, 3, 21);
  CounterRng rng(77);
  std::vector<int> perm = rng.permutation(40);
  const DataSet shuffled = data.subset(perm);

  Eigen::MatrixXd probe(5, 3);
  CounterRng prng(78);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j) probe(i, j) = prng.normal();

  const std::vector<RegressionAlgorithm> algs = {
      RegressionAlgorithm::ols(),           RegressionAlgorithm::ridge(0.5),
      RegressionAlgorithm::lasso(0.05),     RegressionAlgorithm::stepwise(2),
      RegressionAlgorithm::kernel_smoother(1.5), RegressionAlgorithm::bspline_additive(4)};
  for (const auto& alg : algs) {
    const Eigen::VectorXd p1 = fit(alg, data).predict(probe);
    const Eigen::VectorXd p2 = fit(alg, shuffled).predict(probe);
    CHECK((p1 - p2).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("stepwise with k=d on full-rank data reproduces OLS") {
  const DataSet data = linear_dataset(50, 4, 9);
  const Eigen::VectorXd probe = Eigen::VectorXd::LinSpaced(4, -1.0, 1.0);
  const double ols = fit(RegressionAlgorithm::ols(), data)(probe);
  const double sw = fit(RegressionAlgorithm::stepwise(4), data)(probe);
  CHECK(ols == doctest::Approx(sw).epsilon(1e-8));
}

TEST_CASE("kernel smoother tends to the mean as h grows") {
  const DataSet data = linear_dataset(40, 2, 13);
  const FittedModel m = fit(RegressionAlgorithm::kernel_smoother(1e8), data);
  Eigen::VectorXd x(2);
  x << 0.3, -0.7;
  CHECK(m(x) == doctest::Approx(data.y.mean()).epsilon(1e-9));
}

TEST_CASE("kernel smoother stays defined far from the data") {
  const DataSet data = linear_dataset(20, 2, 14);
  const FittedModel m = fit(RegressionAlgorithm::kernel_smoother(0.2), data);
  Eigen::VectorXd far(2);
  far << 1e6, -1e6;
  CHECK(std::isfinite(m(far)));
}

TEST_CASE("bspline_additive recovers a smooth univariate signal") {
  const int n = 200;
  Eigen::MatrixXd x(n, 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = 2.0 * 3.14159265358979 * i / (n - 1);
    y[i] = std::sin(x(i, 0));
  }
  const DataSet data(x, y);
  const FittedModel m = fit(RegressionAlgorithm::bspline_additive(8), data);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(m(x.row(i).transpose()) - y[i]));
  CHECK(worst < 0.05);
  // clamped, finite extrapolation outside the training range
  Eigen::VectorXd out(1);
  out << 100.0;
  CHECK(std::isfinite(m(out)));
}

TEST_CASE("fit errors") {
  SUBCASE("ols needs n > d") {
    const DataSet data = linear_dataset(5, 5, 1);
    CHECK_THROWS_AS(fit(RegressionAlgorithm::ols(), data), input_error);
  }
  SUBCASE("duplicate column is rank deficient") {
    Eigen::MatrixXd x(10, 2);
    CounterRng rng(4);
    for (int i = 0; i < 10; ++i) x(i, 0) = x(i, 1) = rng.normal();
    Eigen::VectorXd y = x.col(0);
    CHECK_THROWS_AS(fit(RegressionAlgorithm::ols(), DataSet(x, y)), numeric_error);
  }
  SUBCASE("stepwise step count range") {
    const DataSet data = linear_dataset(20, 3, 2);
    CHECK_THROWS_AS(fit(RegressionAlgorithm::stepwise(4), data), input_error);
    CHECK_THROWS_AS(fit(RegressionAlgorithm::stepwise(0), data), input_error);
  }
  SUBCASE("kernel bandwidth must be positive") {
    const DataSet data = linear_dataset(20, 2, 2);
    CHECK_THROWS_AS(fit(RegressionAlgorithm::kernel_smoother(0.0), data), input_error);
  }
}

TEST_CASE("cross_validate") {
  SUBCASE("single grid value is returned unchanged") {
    const DataSet data = linear_dataset(40, 3, 31);
    const auto alg = RegressionAlgorithm::lasso(0).with_cv({5, {0.37}, 9});
    CHECK(cross_validate(alg, data).lambda == 0.37);
  }
  SUBCASE("pure noise selects the stronger penalty") {
    CounterRng rng(55);
    Eigen::MatrixXd x(60, 5);
    Eigen::VectorXd y(60);
    for (int i = 0; i < 60; ++i) {
      for (int j = 0; j < 5; ++j) x(i, j) = rng.normal();
      y[i] = rng.normal();
    }
    const auto alg = RegressionAlgorithm::lasso(0).with_cv({10, {0.01, 10.0}, 3});
    CHECK(cross_validate(alg, DataSet(x, y)).lambda == 10.0);
  }
  SUBCASE("deterministic given seed, and fit() resolves tuning") {
    const DataSet data = linear_dataset(50, 4, 77);
    const auto alg = RegressionAlgorithm::lasso(0).with_cv({5, {0.01, 0.1, 1.0}, 42});
    const double l1 = cross_validate(alg, data).lambda;
    const double l2 = cross_validate(alg, data).lambda;
    CHECK(l1 == l2);
    const FittedModel m = fit(alg, data);
    CHECK(m.info.lambda == l1);
  }
  SUBCASE("empty grid rejected") {
    const DataSet data = linear_dataset(30, 2, 1);
    CHECK_THROWS_AS(cross_validate(RegressionAlgorithm::lasso(0).with_cv({5, {}, 0}), data),
                    input_error);
  }
}

TEST_CASE("parametric interval") {
  SUBCASE("noiseless exact fit degenerates to a point") {
    const DataSet data = linear_dataset(30, 2, 17, 0.0);
    const FittedModel m = fit(RegressionAlgorithm::ols(), data);
    Eigen::VectorXd x(2);
    x << 0.4, 0.2;
    const Interval iv = parametric_interval(m, data, x, MiscoverageLevel(0.1));
    CHECK(iv.length() < 1e-8);
    CHECK(iv.contains(m(x)));
  }

  SUBCASE("d=1 interval matches direct matrix arithmetic") {
    Eigen::MatrixXd x(4, 1);
    x << 0, 1, 2, 3;
    Eigen::VectorXd y(4);
    y << 0, 1, 2, 4;
    const DataSet data(x, y);
    const FittedModel m = fit(RegressionAlgorithm::ols(), data);
    // by hand: slope 1.3, intercept -0.2, RSS 0.3, sigma2 = 0.15,
    // q(2) = 1/4 + (2-1.5)^2/5 = 0.3
    CHECK(m.info.coef[0] == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(m.info.intercept == doctest::Approx(-0.2).epsilon(1e-12));
    Eigen::VectorXd x0(1);
    x0 << 2.0;
    const double alpha = 0.1;
    const Interval iv = parametric_interval(m, data, x0, MiscoverageLevel(alpha));
    const double hw = normal_abs_upper_quantile(alpha) * std::sqrt(0.15 * 1.3);
    CHECK(iv.lo == doctest::Approx(2.4 - hw).epsilon(1e-10));
    CHECK(iv.hi == doctest::Approx(2.4 + hw).epsilon(1e-10));
  }

  SUBCASE("ridge interval is finite and centered at the fit") {
    const DataSet data = linear_dataset(50, 3, 23);
    const FittedModel m = fit(RegressionAlgorithm::ridge(0.7), data);
    Eigen::VectorXd x(3);
    x << 1, 0, -1;
    const Interval iv = parametric_interval(m, data, x, MiscoverageLevel(0.1));
    CHECK(iv.is_finite());
    CHECK(iv.contains(m(x)));
  }

  SUBCASE("needs n > d + 1") {
    const DataSet small = linear_dataset(4, 3, 3);
    const FittedModel m = fit(RegressionAlgorithm::ols(), small);
    Eigen::VectorXd x(3);
    x.setZero();
    CHECK_THROWS_AS(parametric_interval(m, small, x, MiscoverageLevel(0.1)), input_error);
  }

  SUBCASE("batch variant agrees with single-point calls") {
    const DataSet data = linear_dataset(40, 2, 29);
    const FittedModel m = fit(RegressionAlgorithm::ols(), data);
    Eigen::MatrixXd xs(3, 2);
    xs << 0, 0, 1, -1, 0.5, 2;
    const auto batch = parametric_intervals(m, data, xs, MiscoverageLevel(0.2));
    for (int i = 0; i < 3; ++i) {
      const Interval one =
          parametric_interval(m, data, xs.row(i).transpose(), MiscoverageLevel(0.2));
      CHECK(batch[static_cast<std::size_t>(i)].lo == doctest::Approx(one.lo).epsilon(1e-12));
      CHECK(batch[static_cast<std::size_t>(i)].hi == doctest::Approx(one.hi).epsilon(1e-12));
    }
  }
}
