#pragma once

#include "qsig/complexity.hpp"
#include "qsig/quantum.hpp"

namespace qsig {

// The pointer basis is fixed to the computational basis; a different pointer
// basis is obtained by conjugating the input state, not by a parameter here.
struct DecoherenceParams {
  double tau = 1.0;  // decay time constant, > 0
};

// Environment-induced dephasing: diagonal entries unchanged (bit-identical),
// every off-diagonal entry multiplied by e^(−t/τ). Satisfies the semigroup
// law decohere(decohere(ρ,t₁),t₂) = decohere(ρ,t₁+t₂) up to rounding.
DensityMatrix decohere(const DensityMatrix& rho, double t, const DecoherenceParams& params);

// t → ∞ limit: the off-diagonals vanish and what remains is the diagonal
// classical probability, equal to diagonal_probability(s).
FiniteProbability limit_decohere(const PureState& s);

// ς^T(t) = Tr ρ²(t) for ρ(t) = decohere(|ψ⟩⟨ψ|, t): starts at 1, decreases.
double sieve_purity(const PureState& s, double t, const DecoherenceParams& params);

// ς^S(t) = S(ρ(t)) in bits: starts at 0, increases.
double sieve_entropy(const PureState& s, double t, const DecoherenceParams& params);

// ς^A = Îp of the fully decohered diagonal, outcomes encoded in n bits,
// relativized to n (side string = decimal n).
double sieve_algorithmic(const PureState& s, const ComplexityModel& model);

// Exact average of ς^A over all 2^n pointer states, summed in ascending
// basis order; n under the length model (every pointer state scores n).
double pointer_average(int qubits, const ComplexityModel& model);

}  // namespace qsig
