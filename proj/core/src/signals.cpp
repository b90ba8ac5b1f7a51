#include "qsig/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qsig {

namespace {

void check_normalized(double sum) {
  if (std::abs(sum - 1.0) > kProbabilityTol) {
    throw std::invalid_argument("probability weights must sum to 1 within 1e-9");
  }
}

}  // namespace

FiniteProbability::FiniteProbability(std::vector<std::uint64_t> indices,
                                     std::vector<double> weights, bool renormalize)
    : indices_(std::move(indices)), weights_(std::move(weights)) {
  if (indices_.size() != weights_.size()) {
    throw std::invalid_argument("index and weight vectors must have equal length");
  }
  if (indices_.empty()) {
    throw std::invalid_argument("probability support must be nonempty");
  }
  // Sort by index, carrying weights along. Weights are only reordered, never
  // recomputed, so callers control the exact stored values.
  if (!std::is_sorted(indices_.begin(), indices_.end())) {
    std::vector<std::size_t> order(indices_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return indices_[a] < indices_[b]; });
    std::vector<std::uint64_t> idx(indices_.size());
    std::vector<double> w(weights_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      idx[i] = indices_[order[i]];
      w[i] = weights_[order[i]];
    }
    indices_ = std::move(idx);
    weights_ = std::move(w);
  }
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] == indices_[i - 1]) {
      throw std::invalid_argument("duplicate outcome index in probability support");
    }
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument("probability weights must be nonnegative");
    }
    total += w;
  }
  if (renormalize) {
    if (total <= 0.0) {
      throw std::invalid_argument("cannot renormalize zero total weight");
    }
    for (double& w : weights_) w /= total;
  } else {
    check_normalized(total);
  }
}

FiniteProbability FiniteProbability::point_mass(std::uint64_t index) {
  return FiniteProbability({index}, {1.0});
}

FiniteProbability FiniteProbability::uniform(std::uint64_t outcome_count) {
  if (outcome_count == 0) {
    throw std::invalid_argument("uniform distribution needs at least one outcome");
  }
  std::vector<std::uint64_t> idx(outcome_count);
  std::iota(idx.begin(), idx.end(), std::uint64_t{0});
  std::vector<double> w(outcome_count, 1.0 / static_cast<double>(outcome_count));
  return FiniteProbability(std::move(idx), std::move(w), true);
}

double FiniteProbability::weight_of(std::uint64_t index) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it == indices_.end() || *it != index) return 0.0;
  return weights_[static_cast<std::size_t>(it - indices_.begin())];
}

std::uint64_t FiniteProbability::max_index() const { return indices_.back(); }

double FiniteProbability::sum() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  return total;
}

double FiniteProbability::entropy_bits() const {
  double h = 0.0;
  for (double w : weights_) {
    if (w > 0.0) h -= w * std::log2(w);
  }
  return h;
}

ChannelKernel::ChannelKernel(std::map<std::uint64_t, FiniteProbability> rows)
    : rows_(std::move(rows)) {
  if (rows_.empty()) {
    throw std::invalid_argument("channel kernel must have at least one row");
  }
  // Row normalization is enforced by FiniteProbability itself.
}

ChannelKernel ChannelKernel::identity(const std::vector<std::uint64_t>& support) {
  std::map<std::uint64_t, FiniteProbability> rows;
  for (std::uint64_t z : support) {
    rows.emplace(z, FiniteProbability::point_mass(z));
  }
  return ChannelKernel(std::move(rows));
}

const FiniteProbability& ChannelKernel::row(std::uint64_t z) const {
  auto it = rows_.find(z);
  if (it == rows_.end()) {
    throw std::out_of_range("channel kernel has no row for input index " + std::to_string(z));
  }
  return it->second;
}

std::uint64_t ChannelKernel::max_output_index() const {
  std::uint64_t m = 0;
  for (const auto& [z, row] : rows_) {
    m = std::max(m, row.max_index());
  }
  return m;
}

FiniteProbability apply_channel(const ChannelKernel& f, const FiniteProbability& p) {
  // Deterministic accumulation order: ascending input index, then ascending
  // output index within each row. An identity kernel therefore yields
  // out[z] = 0 + p(z)*1.0, bit-identical to the input weight.
  std::map<std::uint64_t, double> out;
  const auto& idx = p.indices();
  const auto& w = p.weights();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (w[i] == 0.0) continue;  // impossible inputs need no kernel row
    const FiniteProbability& row = f.row(idx[i]);  // throws if the row is missing
    const auto& ridx = row.indices();
    const auto& rw = row.weights();
    for (std::size_t j = 0; j < ridx.size(); ++j) {
      out[ridx[j]] += w[i] * rw[j];
    }
  }
  std::vector<std::uint64_t> oidx;
  std::vector<double> ow;
  oidx.reserve(out.size());
  ow.reserve(out.size());
  bool pruned = false;
  for (const auto& [k, v] : out) {
    if (v < kChannelPruneTol) {
      // Dropping an exact zero removes no mass, so it must not trigger the
      // renormalization pass (which would perturb the surviving weights).
      if (v > 0.0) pruned = true;
      continue;
    }
    oidx.push_back(k);
    ow.push_back(v);
  }
  if (oidx.empty()) {
    throw std::runtime_error("channel output lost all mass to pruning");
  }
  // Renormalize only when pruning actually removed something; otherwise the
  // weights pass through untouched (identity channels must be exact).
  return FiniteProbability(std::move(oidx), std::move(ow), pruned);
}

ChannelKernel coarsen_kernel(std::uint64_t input_count, std::uint64_t block) {
  if (input_count == 0 || block == 0) {
    throw std::invalid_argument("coarsen_kernel needs positive input count and block");
  }
  if (input_count % block != 0) {
    throw std::invalid_argument("block size must divide the input count");
  }
  std::map<std::uint64_t, FiniteProbability> rows;
  for (std::uint64_t z = 0; z < input_count; ++z) {
    rows.emplace(z, FiniteProbability::point_mass(z / block));
  }
  return ChannelKernel(std::move(rows));
}

GridProbability1D::GridProbability1D(double origin, double spacing,
                                     std::vector<double> weights, bool renormalize)
    : origin_(origin), spacing_(spacing), weights_(std::move(weights)) {
  if (!(spacing_ > 0.0)) {
    throw std::invalid_argument("grid spacing must be positive");
  }
  if (weights_.empty()) {
    throw std::invalid_argument("grid probability must have at least one cell");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument("grid weights must be nonnegative");
    }
    total += w;
  }
  if (renormalize) {
    if (total <= 0.0) {
      throw std::invalid_argument("cannot renormalize zero total weight");
    }
    for (double& w : weights_) w /= total;
  } else {
    check_normalized(total);
  }
}

double GridProbability1D::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    m += weights_[i] * (origin_ + spacing_ * static_cast<double>(i));
  }
  return m;
}

double GridProbability1D::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double x = origin_ + spacing_ * static_cast<double>(i) - m;
    v += weights_[i] * x * x;
  }
  return v;
}

FiniteProbability GridProbability1D::to_finite() const {
  std::vector<std::uint64_t> idx(weights_.size());
  std::iota(idx.begin(), idx.end(), std::uint64_t{0});
  return FiniteProbability(std::move(idx), weights_);
}

GridProbability1D gaussian_convolve(const GridProbability1D& p, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian sigma must be positive");
  }
  const double dx = p.spacing();
  const int half = static_cast<int>(std::ceil(5.0 * sigma / dx));
  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  double ksum = 0.0;
  for (int m = -half; m <= half; ++m) {
    const double x = static_cast<double>(m) * dx;
    const double g = std::exp(-0.5 * x * x / (sigma * sigma));
    kernel[static_cast<std::size_t>(m + half)] = g;
    ksum += g;
  }
  for (double& g : kernel) g /= ksum;

  const auto& w = p.weights();
  const int len = static_cast<int>(w.size());
  std::vector<double> out(w.size(), 0.0);
  for (int j = 0; j < len; ++j) {
    double acc = 0.0;
    for (int m = -half; m <= half; ++m) {
      const int src = j - m;
      if (src < 0 || src >= len) continue;  // mass convolved past the grid is dropped
      acc += kernel[static_cast<std::size_t>(m + half)] * w[static_cast<std::size_t>(src)];
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return GridProbability1D(p.origin(), dx, std::move(out), true);
}

}  // namespace qsig
