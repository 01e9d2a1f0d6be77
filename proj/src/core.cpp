#include "confpred/core.hpp"

#include <algorithm>
#include <cmath>

#include "confpred/rng.hpp"

namespace confpred {

Eigen::VectorXd absolute_residuals(const FittedModel& model, const DataSet& data) {
  if (model.input_dim != data.dim())
    throw input_error("absolute_residuals: model/data dimension mismatch");
  Eigen::VectorXd r(data.n());
  for (Eigen::Index i = 0; i < data.n(); ++i)
    r[i] = std::abs(data.y[i] - model.eval(data.x.row(i).transpose()));
  return r;
}

std::pair<std::vector<int>, std::vector<int>> split_indices(int n, const SplitConfig& cfg) {
  if (n < 2) throw input_error("split_indices: need n >= 2");
  if (!(cfg.ratio > 0.0 && cfg.ratio < 1.0))
    throw input_error("split_indices: ratio must be in (0,1)");
  int n1 = static_cast<int>(std::floor(cfg.ratio * n + 1e-9));
  n1 = std::clamp(n1, 1, n - 1);
  CounterRng rng(cfg.seed);
  std::vector<int> perm = rng.permutation(n);
  std::vector<int> i1(perm.begin(), perm.begin() + n1);
  std::vector<int> i2(perm.begin() + n1, perm.end());
  std::sort(i1.begin(), i1.end());
  std::sort(i2.begin(), i2.end());
  return {std::move(i1), std::move(i2)};
}

}  // namespace confpred
