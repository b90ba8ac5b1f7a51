#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace qsig {

inline constexpr double kProbabilityTol = 1e-9;
// Channel outputs below this weight are pruned (and the remainder
// renormalized) to keep supports finite and reports readable.
inline constexpr double kChannelPruneTol = 1e-15;

// Nonnegative weights over integer outcome indices, summing to 1. The support
// is stored sorted by index; zero weights are allowed (measurements report
// every outcome), and estimator code skips them. Exact-arithmetic contracts
// elsewhere depend on construction never perturbing the given weights unless
// renormalize is requested.
class FiniteProbability {
public:
  FiniteProbability(std::vector<std::uint64_t> indices, std::vector<double> weights,
                    bool renormalize = false);

  static FiniteProbability point_mass(std::uint64_t index);
  static FiniteProbability uniform(std::uint64_t outcome_count);

  std::size_t support_size() const { return indices_.size(); }
  const std::vector<std::uint64_t>& indices() const { return indices_; }
  const std::vector<double>& weights() const { return weights_; }

  // 0 for indices outside the support.
  double weight_of(std::uint64_t index) const;
  std::uint64_t max_index() const;
  double sum() const;

  // Shannon entropy of the weights in bits, 0·log 0 = 0.
  double entropy_bits() const;

private:
  std::vector<std::uint64_t> indices_;  // ascending
  std::vector<double> weights_;
};

// Row-stochastic kernel f(x|z): one FiniteProbability over outputs x per
// input index z.
class ChannelKernel {
public:
  explicit ChannelKernel(std::map<std::uint64_t, FiniteProbability> rows);

  static ChannelKernel identity(const std::vector<std::uint64_t>& support);

  bool has_row(std::uint64_t z) const { return rows_.count(z) != 0; }
  const FiniteProbability& row(std::uint64_t z) const;
  const std::map<std::uint64_t, FiniteProbability>& rows() const { return rows_; }

  // Largest output index reachable through any row.
  std::uint64_t max_output_index() const;

private:
  std::map<std::uint64_t, FiniteProbability> rows_;
};

// fp(x) = sum_z f(x|z) p(z). Outputs below kChannelPruneTol are pruned and the
// rest renormalized; when nothing is pruned the weights pass through
// untouched, so an identity kernel returns bit-identical weights.
FiniteProbability apply_channel(const ChannelKernel& f, const FiniteProbability& p);

// Deterministic coarsening channel z -> floor(z / block) on inputs
// 0..input_count-1; block must divide input_count.
ChannelKernel coarsen_kernel(std::uint64_t input_count, std::uint64_t block);

// Probability over a regular 1-D grid; cell i sits at origin + i*spacing.
// Cell indices double as outcome indices so the estimator stack applies
// unchanged.
class GridProbability1D {
public:
  GridProbability1D(double origin, double spacing, std::vector<double> weights,
                    bool renormalize = false);

  double origin() const { return origin_; }
  double spacing() const { return spacing_; }
  const std::vector<double>& weights() const { return weights_; }

  double mean() const;
  double variance() const;

  FiniteProbability to_finite() const;

private:
  double origin_;
  double spacing_;
  std::vector<double> weights_;
};

// Discrete convolution with a grid-sampled Gaussian truncated at ±5σ and
// renormalized; the output lives on the same grid (mass convolved past the
// ends is discarded before the final renormalization).
GridProbability1D gaussian_convolve(const GridProbability1D& p, double sigma);

}  // namespace qsig
