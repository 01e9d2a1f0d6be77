#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "confpred/types.hpp"

namespace confpred {

enum class EstimatorKind {
  ols,
  ridge,
  lasso,
  elastic_net,
  stepwise,
  kernel_smoother,
  bspline_additive,
  custom
};

std::string to_string(EstimatorKind kind);

/// Summary of a fit: resolved hyperparameters, linear-family coefficients on
/// the original scale (empty for non-linear fits), and the selected variable
/// set for sparse fits.
struct ModelInfo {
  EstimatorKind kind = EstimatorKind::custom;
  double intercept = 0.0;
  Eigen::VectorXd coef;        // empty unless the fit is linear in x
  std::vector<int> selected;   // indices of active variables
  double lambda = 0.0;         // resolved penalty / bandwidth / df, per kind
  double mix = 1.0;
};

/// Opaque trained predictor: evaluates x -> real, total on all finite
/// inputs of the right dimension. Immutable and cheap to copy.
struct FittedModel {
  std::function<double(const Eigen::VectorXd&)> eval;
  ModelInfo info;
  Eigen::Index input_dim = 0;

  double operator()(const Eigen::VectorXd& x) const {
    if (x.size() != input_dim) throw input_error("FittedModel: dimension mismatch");
    return eval(x);
  }

  Eigen::VectorXd predict(const Eigen::MatrixXd& x) const {
    if (x.cols() != input_dim) throw input_error("FittedModel: dimension mismatch");
    Eigen::VectorXd out(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) out[i] = eval(x.row(i).transpose());
    return out;
  }
};

}  // namespace confpred
