#pragma once

#include <Eigen/Core>

#include "confpred/estimators.hpp"
#include "confpred/model.hpp"
#include "confpred/rng.hpp"

namespace confpred::test {

inline FittedModel constant_model(Eigen::Index dim, double value) {
  FittedModel m;
  m.input_dim = dim;
  m.info.kind = EstimatorKind::custom;
  m.info.intercept = value;
  m.eval = [value](const Eigen::VectorXd&) { return value; };
  return m;
}

/// Estimator that ignores the data and always predicts `value`.
inline RegressionAlgorithm constant_algorithm(double value) {
  return RegressionAlgorithm::custom([value](const DataSet& data) {
    return constant_model(data.dim(), value);
  });
}

inline DataSet random_dataset(int n, int d, std::uint64_t seed, double noise_sd = 1.0) {
  CounterRng rng(seed);
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = rng.normal();
    y[i] = x(i, 0) - 0.5 * x(i, d > 1 ? 1 : 0) + noise_sd * rng.normal();
  }
  return DataSet(std::move(x), std::move(y));
}

}  // namespace confpred::test
