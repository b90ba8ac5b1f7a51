#pragma once

#include <cstdint>
#include <vector>

namespace qsig {

double mean(const std::vector<double>& xs);
// Sample standard deviation (n−1 denominator); 0 for fewer than two points.
double sample_stddev(const std::vector<double>& xs);
// sample_stddev / sqrt(n).
double standard_error(const std::vector<double>& xs);
double median(std::vector<double> xs);  // by value: sorts a copy
double max_value(const std::vector<double>& xs);

// Exact one-sided sign test for H1 "median < 0": with m nonzero differences
// of which k are positive, returns P[Binomial(m, 1/2) <= k]. Zeros are
// dropped, per the standard sign-test convention. Returns 1 when m = 0.
double sign_test_p_negative(const std::vector<double>& diffs);

// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

// Log-domain ensemble average: given per-trial values v_i in bits,
// estimates log₂ of the mean of 2^(v_i). The standard error is computed on
// the linear scale and propagated through the logarithm (delta method:
// se_linear / (mean · ln 2)); max_bits is the largest v_i, reported so
// heavy-tailed means are visible in reports.
struct Log2MeanExp {
  double estimate_bits = 0.0;
  double stderr_bits = 0.0;
  double max_bits = 0.0;
};
Log2MeanExp log2_mean_exp2(const std::vector<double>& bits_values);

// Pearson chi-square statistic of observed counts against the uniform
// distribution over the given cells.
double chi_square_uniform(const std::vector<std::uint64_t>& counts);

// Two-sample Kolmogorov-Smirnov statistic sup|F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace qsig
