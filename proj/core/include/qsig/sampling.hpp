#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qsig/measurement.hpp"
#include "qsig/quantum.hpp"
#include "qsig/version.hpp"

namespace qsig {

// Deterministic generator behind every sampler (identity string: kRngId).
//
// The raw stream is std::mt19937_64, whose outputs are pinned by the
// standard. The variate transforms are fixed here rather than delegated to
// <random> distributions (those differ between standard libraries):
//   uniform01: (next_u64() >> 11) * 2^-53, redrawn until nonzero where a
//              log is taken downstream;
//   normal:    Box-Muller on two uniforms, cosine branch first, sine branch
//              cached and returned by the next call;
//   gamma:     Marsaglia-Tsang squeeze for alpha >= 1, with the usual
//              U^(1/alpha) boost below 1.
// Identical seed => identical sample stream, forever.
class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed);

  static const char* algorithm() { return kRngId; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return gen_(); }

  double uniform01();          // [0, 1)
  double uniform01_nonzero();  // (0, 1)
  double normal();
  double gamma(double alpha);

private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Per-trial seed chain for (base seed, two stream coordinates, trial index).
// Experiments use a = n, b = c so every (n, c, trial) cell draws from its own
// stream regardless of how trials are spread over workers.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                          std::uint64_t trial);

// Mixing law η over the M-simplex. Laws are registered by name; "dirichlet"
// (symmetric, parameter = concentration) ships by default and
// register_simplex_law extends the registry.
struct MixtureSpec {
  int component_count = 1;            // M
  std::string simplex_law = "dirichlet";
  double law_param = 1.0;

  // Parses "<law>:<param>:<M>", e.g. "dirichlet:1.0:4".
  static MixtureSpec parse(const std::string& eta);
  std::string str() const;
};

using SimplexSampler =
    std::function<std::vector<double>(double param, int components, SeededRng& rng)>;
void register_simplex_law(const std::string& name, SimplexSampler sampler);
std::vector<double> sample_simplex(const MixtureSpec& spec, SeededRng& rng);

// Haar-uniform pure state: d i.i.d. standard complex Gaussians (real part
// drawn before imaginary, ascending index), then normalization.
PureState haar_pure(int qubits, SeededRng& rng);

// Σ p_i |ψ_i⟩⟨ψ_i| with (p_i) ~ η (drawn first) and |ψ_i⟩ i.i.d. Haar.
DensityMatrix mixed_state(int qubits, const MixtureSpec& spec, SeededRng& rng);

// Draw |ψ⟩ ~ Haar, sample an outcome of block_pvm(n, c) from its Born
// distribution (inverse-CDF walk in ascending outcome order), collapse.
struct CollapsedSample {
  PureState state;
  std::uint64_t outcome;
};
CollapsedSample collapsed_sample(int qubits, int coarseness, SeededRng& rng);

// Rejection sampler for priors Γ ≤ 2^c_bias · Λ: accept a Haar draw with
// probability weight_fn(ψ)/2^c_bias. weight_fn must map into
// [0, 2^c_bias]; a value outside the bound is rejected with a diagnostic.
// attempts_out (optional) reports how many Haar draws were consumed.
PureState biased_prior_sample(int qubits, double c_bias,
                              const std::function<double(const PureState&)>& weight_fn,
                              SeededRng& rng, std::uint64_t* attempts_out = nullptr);

}  // namespace qsig
