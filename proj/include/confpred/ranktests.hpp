#pragma once

#include <vector>

#include "confpred/types.hpp"

namespace confpred {

/// Exact binomial sign test of H0: median <= 0. Zeros are dropped and
/// counted.
struct SignTestResult {
  int n_positive = 0;
  int n_negative = 0;
  int n_zero = 0;
  double p_one_sided = 1.0;  // H1: median > 0
  double p_two_sided = 1.0;
};
SignTestResult sign_test(const std::vector<double>& x);

/// One-sample Wilcoxon signed-rank test of H0: (pseudo)median <= 0.
/// Zeros dropped, midranks for tied |x|. Exact null distribution for
/// m <= 50 (tie-aware), normal approximation with continuity and tie
/// corrections beyond.
struct WilcoxonResult {
  double statistic = 0.0;  // W+: rank sum over positive values
  int m = 0;               // nonzero sample size
  bool exact = true;
  double p_one_sided = 1.0;
  double p_two_sided = 1.0;
};
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x);

/// Exact null pmf of W+ for m distinct ranks: entry w is P(W+ = w),
/// w = 0..m(m+1)/2.
std::vector<double> wilcoxon_exact_null(int m);

/// Confidence interval for the pseudomedian by inverting the two-sided
/// signed-rank test over the sorted Walsh averages, plus the
/// Hodges-Lehmann point estimate.
struct WilcoxonInterval {
  Interval interval;
  double estimate = 0.0;
};
WilcoxonInterval wilcoxon_median_interval(const std::vector<double>& x, double alpha);

}  // namespace confpred
