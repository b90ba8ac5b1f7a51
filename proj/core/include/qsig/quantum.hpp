#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qsig/signals.hpp"

namespace qsig {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kStateTol = 1e-9;

// Unit-norm amplitude vector over a 2^n-dimensional Hilbert space. Basis
// index i corresponds to the big-endian n-bit string of i.
class PureState {
public:
  explicit PureState(CVector amplitudes);

  static PureState basis(int qubits, std::uint64_t index);
  static PureState uniform_superposition(int qubits);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }

private:
  CVector amplitudes_;
  int qubits_;
};

// Unit-norm vector over a system⊗environment space, system index major
// (i.e. amplitude(a*env_dim + e) multiplies |a⟩_sys|e⟩_env).
class JointState {
public:
  JointState(CVector amplitudes, Eigen::Index system_dim, Eigen::Index env_dim);

  Eigen::Index system_dim() const { return system_dim_; }
  Eigen::Index env_dim() const { return env_dim_; }
  const CVector& amplitudes() const { return amplitudes_; }

private:
  CVector amplitudes_;
  Eigen::Index system_dim_;
  Eigen::Index env_dim_;
};

// Hermitian, trace-1, positive-semidefinite matrix over 2^n dimensions.
//
// Construction checks Hermiticity, unit trace and nonnegative diagonal
// (a cheap necessary condition for positivity); the full eigenvalue check
// would cost O(d^3) per construction and is performed where the spectrum is
// needed anyway (von_neumann_entropy) and by validate_density, which tests
// apply to every module output.
class DensityMatrix {
public:
  explicit DensityMatrix(CMatrix entries);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix& matrix() const { return entries_; }

private:
  CMatrix entries_;
  int qubits_;
};

// Full PSD check: throws unless every eigenvalue is >= -1e-9 (and the cheap
// constructor invariants hold, which they do for any constructed value).
void validate_density(const DensityMatrix& rho);

// |ψ⟩⟨ψ| — rank one, trace 1.
DensityMatrix outer_product(const PureState& s);

// Reduced system matrix with the environment traced out.
DensityMatrix partial_trace_env(const JointState& j);

// Tr ρ² ∈ [1/d, 1]. Computed as the squared Frobenius norm (equal to Tr ρ²
// for Hermitian ρ), which is O(d²).
double purity(const DensityMatrix& rho);

// −Σ λ log₂ λ over eigenvalues, in bits; eigenvalues are clipped to [0, 1]
// first (eigensolvers return tiny negatives on PSD inputs).
double von_neumann_entropy(const DensityMatrix& rho);

// p(i) = |amplitude_i|², over all 2^n basis indices (zeros kept).
FiniteProbability diagonal_probability(const PureState& s);

// Kronecker product helpers; kron(a, b) puts a's index major, matching
// JointState's layout.
CVector kron(const CVector& a, const CVector& b);
JointState joint_product(const PureState& sys, const CVector& env_ket);

}  // namespace qsig
