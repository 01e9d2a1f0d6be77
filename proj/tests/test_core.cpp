#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "confpred/core.hpp"
#include "confpred/csv.hpp"
#include "confpred/quantile.hpp"
#include "confpred/rng.hpp"
#include "confpred/stats.hpp"
#include "helpers.hpp"

using namespace confpred;
using test::constant_model;

TEST_CASE("finite_sample_quantile: worked examples") {
  const MiscoverageLevel half(0.5);
  CHECK(finite_sample_quantile({1, 2, 3, 4, 5}, half, QuantileRule::augmented) == 3.0);

  // k = ceil(3 * 0.9) = 3 exceeds m = 2, so the quantile is +inf
  CHECK(finite_sample_quantile({1, 2}, MiscoverageLevel(0.1), QuantileRule::augmented) == kInf);

  // plain rule: k = ceil(8 * 0.75) = 6, sorted {1,1,2,3,4,5,6,9} -> 5
  CHECK(finite_sample_quantile({3, 1, 4, 1, 5, 9, 2, 6}, MiscoverageLevel(0.25),
                               QuantileRule::plain) == 5.0);

  CHECK(finite_sample_quantile({7}, MiscoverageLevel(0.9), QuantileRule::plain) == 7.0);
}

TEST_CASE("finite_sample_quantile: errors") {
  CHECK_THROWS_AS(finite_sample_quantile({}, MiscoverageLevel(0.5), QuantileRule::plain),
                  input_error);
  CHECK_THROWS_AS(MiscoverageLevel(0.0), input_error);
  CHECK_THROWS_AS(MiscoverageLevel(1.0), input_error);
  CHECK_THROWS_AS(MiscoverageLevel(-0.2), input_error);
  CHECK_THROWS_AS(
      finite_sample_quantile({1.0, kInf}, MiscoverageLevel(0.5), QuantileRule::plain),
      input_error);
}

TEST_CASE("augmented rule covers a held-out draw at exactly ceil((m+1)(1-a))/(m+1)") {
  // Exhaustive rank argument: with m+1 exchangeable distinct values, the
  // held-out one lands at each rank r with equal probability, and it is
  // covered iff r <= k.
  for (int m : {1, 2, 5, 10, 37}) {
    for (double alpha : {0.05, 0.1, 0.25, 0.5, 0.9}) {
      std::vector<double> values(m);
      for (int i = 0; i < m; ++i) values[i] = i + 1.0;
      const double q =
          finite_sample_quantile(values, MiscoverageLevel(alpha), QuantileRule::augmented);
      int covered = 0;
      for (int r = 1; r <= m + 1; ++r) {
        const double held_out = r - 0.5;  // sits at rank r among the m+1 values
        if (held_out <= q) ++covered;
      }
      const int k = augmented_rank(m, alpha);
      CHECK(covered == std::min(k, m + 1));
      CHECK(static_cast<double>(covered) / (m + 1) >= 1.0 - alpha);
    }
  }
}

TEST_CASE("quantile is nondecreasing as alpha decreases, invariant to permutation") {
  CounterRng rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> v(15);
    for (auto& x : v) x = rng.normal();
    double prev = -kInf;
    for (double alpha : {0.9, 0.5, 0.25, 0.1, 0.05, 0.01}) {
      const double q = finite_sample_quantile(v, MiscoverageLevel(alpha), QuantileRule::augmented);
      CHECK(q >= prev);
      prev = q;
    }
    std::vector<double> shuffled = v;
    std::reverse(shuffled.begin(), shuffled.end());
    std::swap(shuffled[3], shuffled[7]);
    CHECK(finite_sample_quantile(v, MiscoverageLevel(0.2), QuantileRule::plain) ==
          finite_sample_quantile(shuffled, MiscoverageLevel(0.2), QuantileRule::plain));
  }
}

TEST_CASE("absolute_residuals") {
  SUBCASE("zero model returns |y|") {
    Eigen::MatrixXd x(2, 1);
    x << 0, 0;
    Eigen::VectorXd y(2);
    y << -1, 2;
    const Eigen::VectorXd r = absolute_residuals(constant_model(1, 0.0), DataSet(x, y));
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 2.0);
  }
  SUBCASE("first-coordinate model") {
    Eigen::MatrixXd x(2, 1);
    x << 3, 5;
    Eigen::VectorXd y(2);
    y << 3, 7;
    FittedModel m;
    m.input_dim = 1;
    m.eval = [](const Eigen::VectorXd& v) { return v[0]; };
    const Eigen::VectorXd r = absolute_residuals(m, DataSet(x, y));
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 2.0);
  }
  SUBCASE("ols interpolates three collinear points exactly") {
    Eigen::MatrixXd x(3, 1);
    x << 0, 1, 2;
    Eigen::VectorXd y = 1.0 + 2.0 * x.col(0).array();
    const DataSet data(x, y);
    const Eigen::VectorXd r = absolute_residuals(fit(RegressionAlgorithm::ols(), data), data);
    CHECK(r.maxCoeff() < 1e-10);
  }
  SUBCASE("dimension mismatch") {
    Eigen::MatrixXd x(2, 2);
    x.setZero();
    Eigen::VectorXd y(2);
    y.setZero();
    CHECK_THROWS_AS(absolute_residuals(constant_model(3, 0.0), DataSet(x, y)), input_error);
  }
}

TEST_CASE("split_indices") {
  SUBCASE("disjoint exhaustive halves") {
    const auto [i1, i2] = split_indices(4, {7, 0.5});
    CHECK(i1.size() == 2);
    CHECK(i2.size() == 2);
    std::vector<int> all = i1;
    all.insert(all.end(), i2.begin(), i2.end());
    std::sort(all.begin(), all.end());
    CHECK(all == std::vector<int>{0, 1, 2, 3});
  }
  SUBCASE("odd n gives |I1| = floor(n/2)") {
    const auto [i1, i2] = split_indices(5, {3, 0.5});
    CHECK(i1.size() == 2);
    CHECK(i2.size() == 3);
  }
  SUBCASE("deterministic given seed") {
    const auto a = split_indices(40, {123, 0.5});
    const auto b = split_indices(40, {123, 0.5});
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    const auto c = split_indices(40, {124, 0.5});
    CHECK(a.first != c.first);
  }
  SUBCASE("extreme ratios still leave both folds nonempty") {
    const auto [i1, i2] = split_indices(3, {1, 0.99});
    CHECK(!i1.empty());
    CHECK(!i2.empty());
  }
  CHECK_THROWS_AS(split_indices(1, {0, 0.5}), input_error);
}

TEST_CASE("CounterRng: reproducible streams and sane moments") {
  CounterRng a(99), b(99), c(100);
  for (int i = 0; i < 16; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
  }
  CHECK(a.next_u64() != c.next_u64());

  CounterRng r(2024);
  const int n = 20000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 0.03);
  CHECK(std::abs(sum2 / n - 1.0) < 0.05);

  CounterRng child1 = r.child(1);
  CounterRng child1b = r.child(1);
  CHECK(child1.next_u64() == child1b.next_u64());
  CHECK(r.child(2).next_u64() != r.child(3).next_u64());
}

TEST_CASE("normal quantile and cdf") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-10));
  CHECK(normal_quantile(0.95) == doctest::Approx(1.6448536269514722).epsilon(1e-10));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(normal_abs_upper_quantile(0.1) == doctest::Approx(1.6448536269514722).epsilon(1e-10));
  // |t(2)| upper quantile at alpha = 0.1 equals the t(2) 0.95 quantile
  CHECK(t2_abs_upper_quantile(0.1) == doctest::Approx(2.91998558035372).epsilon(1e-10));
  CHECK_THROWS_AS(normal_quantile(0.0), input_error);
}

TEST_CASE("Interval algebra") {
  const Interval a{0, 2}, b{1, 3};
  const Interval i = Interval::intersect(a, b);
  CHECK(i.lo == 1.0);
  CHECK(i.hi == 2.0);
  CHECK(Interval::intersect(Interval{0, 1}, Interval{2, 3}).is_empty());
  CHECK(Interval::whole().contains(1e300));
  CHECK(Interval::centered(0.0, kInf).lo == -kInf);
  CHECK(Interval::empty().length() == 0.0);
  CHECK(a.contains_interval(Interval::empty()));
  CHECK(Interval{0, 3}.contains_interval(b));
}

TEST_CASE("DataSet invariants") {
  Eigen::MatrixXd x(2, 2);
  x.setOnes();
  Eigen::VectorXd y(3);
  y.setZero();
  CHECK_THROWS_AS(DataSet(x, y), input_error);
  Eigen::VectorXd y2(2);
  y2 << 0, std::nan("");
  CHECK_THROWS_AS(DataSet(x, y2), input_error);
}

TEST_CASE("dataset CSV round trip and error reporting") {
  SUBCASE("round trip") {
    const DataSet data = test::random_dataset(17, 3, 5);
    write_dataset_csv("/tmp/confpred_test_rt.csv", data);
    const DataSet back = read_dataset_csv("/tmp/confpred_test_rt.csv");
    CHECK((back.x - data.x).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.y - data.y).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("bad number names the line") {
    std::istringstream in("x1,y\n1.0,2.0\noops,3.0\n");
    try {
      read_dataset_csv(in, "test");
      CHECK(false);
    } catch (const input_error& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("wrong header rejected") {
    std::istringstream in("a,b\n1,2\n");
    CHECK_THROWS_AS(read_dataset_csv(in, "test"), input_error);
  }
  SUBCASE("wrong field count names the line") {
    std::istringstream in("x1,x2,y\n1,2,3\n1,2\n");
    try {
      read_dataset_csv(in, "test");
      CHECK(false);
    } catch (const input_error& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("query csv") {
    std::istringstream in("x1,x2\n1,2\n3,4\n");
    const Eigen::MatrixXd q = read_query_csv(in, "q");
    CHECK(q.rows() == 2);
    CHECK(q(1, 1) == 4.0);
  }
  SUBCASE("format_number renders infinities as literals") {
    CHECK(format_number(kInf) == "inf");
    CHECK(format_number(-kInf) == "-inf");
    CHECK(format_number(0.5) == "0.5");
  }
}
