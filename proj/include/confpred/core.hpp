#pragma once

#include <utility>
#include <vector>

#include "confpred/model.hpp"
#include "confpred/quantile.hpp"
#include "confpred/types.hpp"

namespace confpred {

/// |y_i - model(x_i)| for every row, in input order.
Eigen::VectorXd absolute_residuals(const FittedModel& model, const DataSet& data);

/// Seeded random partition of {0, ..., n-1} into (I1, I2), |I1| =
/// floor(ratio*n) clamped so both parts are nonempty. Indices are returned
/// sorted; the same (n, cfg) always yields the same split.
std::pair<std::vector<int>, std::vector<int>> split_indices(int n, const SplitConfig& cfg);

}  // namespace confpred
