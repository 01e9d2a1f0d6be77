#include "confpred/quantile.hpp"

#include <algorithm>
#include <cmath>

namespace confpred {

namespace {

// ceil with a small slack so that values which are integers up to floating
// round-off (e.g. 10*0.9 = 9.000000000000002) land on the integer itself.
int ceil_index(double v) { return static_cast<int>(std::ceil(v - 1e-9)); }

}  // namespace

int augmented_rank(int m, double alpha) { return ceil_index((m + 1) * (1.0 - alpha)); }

int plain_rank(int m, double alpha) { return ceil_index(m * (1.0 - alpha)); }

double quantile_from_sorted(const std::vector<double>& sorted, MiscoverageLevel level,
                            QuantileRule rule) {
  const int m = static_cast<int>(sorted.size());
  if (m == 0) throw input_error("finite_sample_quantile: empty sample");
  const int k = rule == QuantileRule::augmented ? augmented_rank(m, level.alpha)
                                                : plain_rank(m, level.alpha);
  if (k > m) return kInf;
  return sorted[std::max(k, 1) - 1];
}

double finite_sample_quantile(std::vector<double> values, MiscoverageLevel level,
                              QuantileRule rule) {
  const int m = static_cast<int>(values.size());
  if (m == 0) throw input_error("finite_sample_quantile: empty sample");
  for (double v : values)
    if (!std::isfinite(v)) throw input_error("finite_sample_quantile: values must be finite");
  const int k = rule == QuantileRule::augmented ? augmented_rank(m, level.alpha)
                                                : plain_rank(m, level.alpha);
  if (k > m) return kInf;
  const int i = std::max(k, 1) - 1;
  std::nth_element(values.begin(), values.begin() + i, values.end());
  return values[i];
}

}  // namespace confpred
