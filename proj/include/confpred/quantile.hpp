#pragma once

#include <vector>

#include "confpred/types.hpp"

namespace confpred {

enum class QuantileRule {
  augmented,  // k = ceil((m+1)(1-alpha)); +inf when k > m
  plain       // k = ceil(m(1-alpha)); always finite
};

/// 1-based rank used by the augmented rule on a sample of size m.
int augmented_rank(int m, double alpha);

/// 1-based rank used by the plain rule on a sample of size m.
int plain_rank(int m, double alpha);

/// k-th smallest of a sorted vector under the given rule; +inf on overflow.
double quantile_from_sorted(const std::vector<double>& sorted, MiscoverageLevel level,
                            QuantileRule rule);

/// Finite-sample quantile of an unsorted sample. Duplicates occupy
/// consecutive ranks (stable order statistics, no randomized tie-breaking).
/// Throws input_error on an empty sample.
double finite_sample_quantile(std::vector<double> values, MiscoverageLevel level,
                              QuantileRule rule);

}  // namespace confpred
