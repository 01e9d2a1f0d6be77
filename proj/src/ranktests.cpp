#include "confpred/ranktests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "confpred/stats.hpp"

namespace confpred {

namespace {

// P(Bin(m, 1/2) >= k), computed in log space so any m is safe.
double binom_upper_tail(int m, int k) {
  if (k <= 0) return 1.0;
  if (k > m) return 0.0;
  std::vector<double> logp(static_cast<std::size_t>(m - k + 1));
  const double log_half = -static_cast<double>(m) * std::log(2.0);
  for (int j = k; j <= m; ++j)
    logp[static_cast<std::size_t>(j - k)] =
        std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0) + log_half;
  const double mx = *std::max_element(logp.begin(), logp.end());
  double s = 0.0;
  for (double lp : logp) s += std::exp(lp - mx);
  return std::min(1.0, std::exp(mx) * s);
}

// Midranks of |x| (x must already have zeros removed); doubled so they are
// integers even with ties.
std::vector<long long> doubled_midranks(const std::vector<double>& absx) {
  const int m = static_cast<int>(absx.size());
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return absx[static_cast<std::size_t>(a)] < absx[static_cast<std::size_t>(b)]; });
  std::vector<long long> r2(static_cast<std::size_t>(m));
  int i = 0;
  while (i < m) {
    int j = i;
    while (j + 1 < m && absx[static_cast<std::size_t>(order[static_cast<std::size_t>(j + 1)])] ==
                            absx[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])
      ++j;
    const long long sum2 = static_cast<long long>(i + 1) + (j + 1);  // 2 * midrank
    for (int t = i; t <= j; ++t) r2[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] = sum2;
    i = j + 1;
  }
  return r2;
}

// Null pmf of the doubled statistic 2*W+ for the given doubled ranks; counts
// stay integral (< 2^m <= 2^50) so doubles are exact.
std::vector<double> exact_null_doubled(const std::vector<long long>& r2) {
  long long total = 0;
  for (long long r : r2) total += r;
  std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
  count[0] = 1.0;
  long long reach = 0;
  for (long long r : r2) {
    reach += r;
    for (long long w = reach; w >= r; --w)
      count[static_cast<std::size_t>(w)] += count[static_cast<std::size_t>(w - r)];
  }
  const double denom = std::pow(2.0, static_cast<double>(r2.size()));
  for (double& c : count) c /= denom;
  return count;
}

}  // namespace

SignTestResult sign_test(const std::vector<double>& x) {
  SignTestResult r;
  for (double v : x) {
    if (v > 0)
      ++r.n_positive;
    else if (v < 0)
      ++r.n_negative;
    else
      ++r.n_zero;
  }
  const int m = r.n_positive + r.n_negative;
  if (m == 0) return r;  // p-values stay 1
  r.p_one_sided = binom_upper_tail(m, r.n_positive);
  const double lower = binom_upper_tail(m, r.n_negative);  // P(Bin <= n_pos) by symmetry
  r.p_two_sided = std::min(1.0, 2.0 * std::min(r.p_one_sided, lower));
  return r;
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x) {
  WilcoxonResult res;
  std::vector<double> absx;
  std::vector<int> sign;
  for (double v : x) {
    if (v == 0.0) continue;
    absx.push_back(std::abs(v));
    sign.push_back(v > 0 ? 1 : -1);
  }
  const int m = static_cast<int>(absx.size());
  res.m = m;
  if (m == 0) return res;

  const std::vector<long long> r2 = doubled_midranks(absx);
  long long w2 = 0;
  for (int i = 0; i < m; ++i)
    if (sign[static_cast<std::size_t>(i)] > 0) w2 += r2[static_cast<std::size_t>(i)];
  res.statistic = static_cast<double>(w2) / 2.0;

  if (m <= 50) {
    res.exact = true;
    const std::vector<double> pmf = exact_null_doubled(r2);
    double upper = 0.0, lower = 0.0;
    for (std::size_t w = 0; w < pmf.size(); ++w) {
      if (static_cast<long long>(w) >= w2) upper += pmf[w];
      if (static_cast<long long>(w) <= w2) lower += pmf[w];
    }
    res.p_one_sided = std::min(1.0, upper);
    res.p_two_sided = std::min(1.0, 2.0 * std::min(upper, lower));
  } else {
    res.exact = false;
    const double md = m;
    const double mean = md * (md + 1.0) / 4.0;
    double tie_adj = 0.0;  // sum over tie groups of (t^3 - t)
    {
      std::vector<double> sorted = absx;
      std::sort(sorted.begin(), sorted.end());
      int i = 0;
      while (i < m) {
        int j = i;
        while (j + 1 < m && sorted[static_cast<std::size_t>(j + 1)] == sorted[static_cast<std::size_t>(i)]) ++j;
        const double t = j - i + 1;
        tie_adj += t * t * t - t;
        i = j + 1;
      }
    }
    const double var = md * (md + 1.0) * (2.0 * md + 1.0) / 24.0 - tie_adj / 48.0;
    const double sd = std::sqrt(std::max(var, 1e-300));
    const double zu = (res.statistic - mean - 0.5) / sd;  // continuity corrected
    const double zl = (res.statistic - mean + 0.5) / sd;
    const double upper = 1.0 - normal_cdf(zu);
    const double lower = normal_cdf(zl);
    res.p_one_sided = std::min(1.0, upper);
    res.p_two_sided = std::min(1.0, 2.0 * std::min(upper, lower));
  }
  return res;
}

std::vector<double> wilcoxon_exact_null(int m) {
  std::vector<long long> r2(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) r2[static_cast<std::size_t>(i)] = 2 * (i + 1);
  const std::vector<double> doubled = exact_null_doubled(r2);
  std::vector<double> pmf(static_cast<std::size_t>(m * (m + 1) / 2) + 1, 0.0);
  for (std::size_t w = 0; w < pmf.size(); ++w) pmf[w] = doubled[2 * w];
  return pmf;
}

WilcoxonInterval wilcoxon_median_interval(const std::vector<double>& x, double alpha) {
  WilcoxonInterval out;
  const int n = static_cast<int>(x.size());
  if (n == 0) return out;

  std::vector<double> walsh;
  walsh.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) walsh.push_back((x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(j)]) / 2.0);
  std::sort(walsh.begin(), walsh.end());
  const auto M = static_cast<long long>(walsh.size());
  out.estimate = (M % 2 == 1) ? walsh[static_cast<std::size_t>(M / 2)]
                              : 0.5 * (walsh[static_cast<std::size_t>(M / 2 - 1)] +
                                       walsh[static_cast<std::size_t>(M / 2)]);

  // largest k with P(W+ <= k) <= alpha/2 under the null for sample size n
  long long k = -1;
  if (n <= 50) {
    const std::vector<double> pmf = wilcoxon_exact_null(n);
    double cdf = 0.0;
    for (std::size_t w = 0; w < pmf.size(); ++w) {
      cdf += pmf[w];
      if (cdf <= alpha / 2.0 + 1e-15)
        k = static_cast<long long>(w);
      else
        break;
    }
  } else {
    const double nd = n;
    const double mean = nd * (nd + 1.0) / 4.0;
    const double sd = std::sqrt(nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0);
    k = static_cast<long long>(
        std::floor(mean - normal_abs_upper_quantile(alpha) * sd - 0.5));
  }
  if (k < 0) {
    // the test can never reject at this level, so the inversion is the line
    out.interval = Interval::whole();
    return out;
  }
  k = std::min(k, (M - 1) / 2);
  out.interval =
      Interval{walsh[static_cast<std::size_t>(k)], walsh[static_cast<std::size_t>(M - k - 1)]};
  return out;
}

}  // namespace confpred
