#include "qsig/sampling.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qsig {

SeededRng::SeededRng(std::uint64_t seed) : gen_(seed), seed_(seed) {}

double SeededRng::uniform01() {
  // 53-bit mantissa; uniform over {0, 2^-53, ..., 1 - 2^-53}.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform01_nonzero() {
  double u = uniform01();
  while (u == 0.0) u = uniform01();
  return u;
}

double SeededRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01_nonzero();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

double SeededRng::gamma(double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("gamma shape parameter must be positive");
  }
  if (alpha < 1.0) {
    // Boost: G(alpha) = G(alpha+1) * U^(1/alpha).
    const double g = gamma(alpha + 1.0);
    return g * std::pow(uniform01_nonzero(), 1.0 / alpha);
  }
  // Marsaglia-Tsang.
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01_nonzero();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                          std::uint64_t trial) {
  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t s = splitmix64(seed + kGolden * (a + 1));
  s = splitmix64(s + kGolden * (b + 1));
  return splitmix64(s + kGolden * (trial + 1));
}

namespace {

std::map<std::string, SimplexSampler>& simplex_registry() {
  static std::map<std::string, SimplexSampler> registry{
      {"dirichlet", [](double param, int components, SeededRng& rng) {
         std::vector<double> w(static_cast<std::size_t>(components));
         double total = 0.0;
         for (double& x : w) {
           x = rng.gamma(param);
           total += x;
         }
         for (double& x : w) x /= total;
         return w;
       }}};
  return registry;
}

std::mutex& simplex_registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

MixtureSpec MixtureSpec::parse(const std::string& eta) {
  const auto first = eta.find(':');
  const auto second = eta.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw std::invalid_argument("eta spec must look like '<law>:<param>:<M>'");
  }
  MixtureSpec spec;
  spec.simplex_law = eta.substr(0, first);
  try {
    spec.law_param = std::stod(eta.substr(first + 1, second - first - 1));
    spec.component_count = std::stoi(eta.substr(second + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("could not parse eta spec '" + eta + "'");
  }
  if (spec.component_count < 1) {
    throw std::invalid_argument("eta component count must be >= 1");
  }
  if (!(spec.law_param > 0.0)) {
    throw std::invalid_argument("eta law parameter must be positive");
  }
  return spec;
}

std::string MixtureSpec::str() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s:%g:%d", simplex_law.c_str(), law_param, component_count);
  return buf;
}

void register_simplex_law(const std::string& name, SimplexSampler sampler) {
  std::lock_guard<std::mutex> lock(simplex_registry_mutex());
  simplex_registry()[name] = std::move(sampler);
}

std::vector<double> sample_simplex(const MixtureSpec& spec, SeededRng& rng) {
  SimplexSampler sampler;
  {
    std::lock_guard<std::mutex> lock(simplex_registry_mutex());
    auto it = simplex_registry().find(spec.simplex_law);
    if (it == simplex_registry().end()) {
      throw std::invalid_argument("unknown simplex law '" + spec.simplex_law + "'");
    }
    sampler = it->second;
  }
  return sampler(spec.law_param, spec.component_count, rng);
}

PureState haar_pure(int qubits, SeededRng& rng) {
  if (qubits < 1 || qubits >= 48) {
    throw std::invalid_argument("qubit count out of supported range");
  }
  const Eigen::Index d = Eigen::Index{1} << qubits;
  CVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = Complex(re, im);
  }
  v /= v.norm();
  return PureState(std::move(v));
}

DensityMatrix mixed_state(int qubits, const MixtureSpec& spec, SeededRng& rng) {
  const std::vector<double> weights = sample_simplex(spec, rng);
  const Eigen::Index d = Eigen::Index{1} << qubits;
  CMatrix rho = CMatrix::Zero(d, d);
  for (double w : weights) {
    const PureState psi = haar_pure(qubits, rng);
    rho.noalias() += w * (psi.amplitudes() * psi.amplitudes().adjoint());
  }
  return DensityMatrix(std::move(rho));
}

CollapsedSample collapsed_sample(int qubits, int coarseness, SeededRng& rng) {
  const BlockPvm blocks = block_pvm(qubits, coarseness);
  const PureState psi = haar_pure(qubits, rng);
  const FiniteProbability p = measure_pure(psi, blocks);
  // Inverse-CDF walk in ascending outcome order; the final outcome absorbs
  // any floating-point shortfall.
  const double u = rng.uniform01();
  double acc = 0.0;
  bool hit = false;
  std::uint64_t outcome = 0;
  std::uint64_t last_positive = 0;
  for (std::size_t i = 0; i < p.support_size(); ++i) {
    if (p.weights()[i] > 0.0) last_positive = p.indices()[i];
    acc += p.weights()[i];
    if (!hit && u < acc && p.weights()[i] > 0.0) {
      outcome = p.indices()[i];
      hit = true;
    }
  }
  // If rounding left the cumulative sum just under u, fall back to the last
  // positive-mass outcome so the collapse below cannot be handed a
  // zero-probability block.
  if (!hit) outcome = last_positive;
  return CollapsedSample{collapse(psi, blocks, outcome), outcome};
}

PureState biased_prior_sample(int qubits, double c_bias,
                              const std::function<double(const PureState&)>& weight_fn,
                              SeededRng& rng, std::uint64_t* attempts_out) {
  if (c_bias < 0.0) {
    throw std::invalid_argument("c_bias must be nonnegative");
  }
  const double bound = std::exp2(c_bias);
  std::uint64_t attempts = 0;
  for (;;) {
    ++attempts;
    PureState psi = haar_pure(qubits, rng);
    const double w = weight_fn(psi);
    if (w < 0.0 || w > bound + 1e-9) {
      throw std::invalid_argument("weight function violated the 2^c_bias bound");
    }
    if (rng.uniform01() * bound < w) {
      if (attempts_out) *attempts_out = attempts;
      return psi;
    }
  }
}

}  // namespace qsig
