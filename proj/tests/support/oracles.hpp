#pragma once

// Frozen expected values for the test suite. Every constant below was
// computed by an oracle independent of the library code path it checks; the
// derivation is recorded next to each value so it can be reproduced by hand
// or with any CAS.

#include <cmath>
#include <cstdint>

namespace oracles {

// Purity of the fully symmetric one-qubit superposition after dephasing for
// one time constant: off-diagonals carry factor e^-1, so
// Tr rho^2 = 2*(1/2)^2 + 2*(1/2 * e^-1)^2 = (1 + e^-2)/2.
inline const double kPurityPlusAtTau = 0.5 * (1.0 + std::exp(-2.0));
// = 0.5676676416183063, matching the 0.56767 closed form to 1e-4.
inline constexpr double kPurityPlusAtTauRounded = 0.56767;

// Entropy (bits) of the same state: eigenvalues (1 +/- e^-1)/2, so the value
// is the binary entropy of (1 - e^-1)/2 = 0.3160602794142788:
//   h2 = -lp*log2(lp) - lm*log2(lm) = 0.9000455915235351 bits.
inline double entropy_plus_at_tau() {
  const double lp = 0.5 * (1.0 + std::exp(-1.0));
  const double lm = 1.0 - lp;
  return -(lp * std::log2(lp) + lm * std::log2(lm));
}

// Binary entropy of 1/4 (eigenvalues 0.75/0.25):
//   0.75*log2(4/3) + 0.25*2 = 0.8112781244591328 bits.
inline constexpr double kEntropyDiag34 = 0.8112781244591328;

// Length-model self-information of the uniform distribution over 2^n
// outcomes: diagonal pairs contribute 2^n * 2^n * 2^-2n = 1, off-diagonal
// pairs (2^2n - 2^n) * 2^-2n, so Ip = log2(2 - 2^-n). n=4: log2(31/16).
inline double ip_length_uniform(int n) { return std::log2(2.0 - std::exp2(-n)); }

// Mean of the length-model white-noise integrand over Haar states at c = 0:
// E[2^Ip] = E[1 + (2^n - 1) * sum p_i^2] = 1 + (2^n - 1) * 2/(2^n + 1)
//         = 3 - 4/(2^n + 1)
// using E[sum p_i^2] = 2/(d+1) for p ~ Dirichlet(1,...,1) (the Haar Born
// weights of a computational-basis measurement). The log2 of that mean is
// what exp_white_noise_pure estimates.
inline double haar_white_noise_mean_bits(int n) {
  return std::log2(3.0 - 4.0 / (std::exp2(n) + 1.0));
}

// chi-square upper quantile at significance 0.01 for 15 degrees of freedom
// (16 cells), i.e. CDF^-1(0.99; df=15): 30.577914166892494.
inline constexpr double kChiSquare01Df15 = 30.577914166892494;

// Two-sample Kolmogorov-Smirnov critical coefficient at significance 0.01:
// c(alpha) = sqrt(-ln(alpha/2)/2) = sqrt(-ln(0.005)/2) = 1.6276236115189503.
// Reject when D > c(alpha) * sqrt((n+m)/(n*m)).
inline constexpr double kKs01Coefficient = 1.6276236115189503;

// Shortest tm1 program emitting "0" is EMIT0 HALT: two 2-bit opcodes, 4 bits.
inline constexpr int kTinyKOfZero = 4;

// Variance of the mean of a symmetric Dirichlet(1) component with M = 4:
// each weight is Beta(1,3) with mean 1/4 and variance 3/80.
inline constexpr double kDirichlet4ComponentVar = 3.0 / 80.0;

}  // namespace oracles
