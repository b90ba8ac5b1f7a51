#include "qsig/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsig {

namespace {

void require_nonempty(const std::vector<double>& xs, const char* what) {
  if (xs.empty()) throw std::invalid_argument(std::string(what) + " of an empty sample");
}

}  // namespace

double mean(const std::vector<double>& xs) {
  require_nonempty(xs, "mean");
  double total = 0.0;
  for (double x : xs) total += x;
  return total / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double standard_error(const std::vector<double>& xs) {
  require_nonempty(xs, "standard error");
  return sample_stddev(xs) / std::sqrt(static_cast<double>(xs.size()));
}

double median(std::vector<double> xs) {
  require_nonempty(xs, "median");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double max_value(const std::vector<double>& xs) {
  require_nonempty(xs, "max");
  return *std::max_element(xs.begin(), xs.end());
}

double sign_test_p_negative(const std::vector<double>& diffs) {
  std::uint64_t m = 0;
  std::uint64_t positive = 0;
  for (double d : diffs) {
    if (d == 0.0) continue;
    ++m;
    if (d > 0.0) ++positive;
  }
  if (m == 0) return 1.0;
  // P[Bin(m, 1/2) <= positive], summed in the log domain for stability.
  double p = 0.0;
  for (std::uint64_t k = 0; k <= positive; ++k) {
    const double log_term = std::lgamma(static_cast<double>(m) + 1.0) -
                            std::lgamma(static_cast<double>(k) + 1.0) -
                            std::lgamma(static_cast<double>(m - k) + 1.0) -
                            static_cast<double>(m) * std::log(2.0);
    p += std::exp(log_term);
  }
  return std::min(p, 1.0);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("least squares needs two equal-length samples of size >= 2");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least squares on a degenerate x sample");
  return sxy / sxx;
}

Log2MeanExp log2_mean_exp2(const std::vector<double>& bits_values) {
  require_nonempty(bits_values, "log2-mean-exp2");
  std::vector<double> linear(bits_values.size());
  for (std::size_t i = 0; i < bits_values.size(); ++i) {
    linear[i] = std::exp2(bits_values[i]);
  }
  const double m = mean(linear);
  Log2MeanExp out;
  out.estimate_bits = std::log2(m);
  out.stderr_bits = standard_error(linear) / (m * std::log(2.0));
  out.max_bits = max_value(bits_values);
  return out;
}

double chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  if (counts.empty()) throw std::invalid_argument("chi-square of an empty count vector");
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) throw std::invalid_argument("chi-square of all-zero counts");
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("KS statistic needs two nonempty samples");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace qsig
