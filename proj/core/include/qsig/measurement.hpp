#pragma once

#include <cstdint>
#include <vector>

#include "qsig/quantum.hpp"
#include "qsig/signals.hpp"

namespace qsig {

// POVM: Hermitian PSD elements summing to the identity. Construction checks
// squareness, equal dimensions, Hermiticity, completeness and nonnegative
// diagonals; the O(d^3)-per-element eigenvalue PSD check lives in
// validate_povm so hot loops can build trusted sets cheaply.
class PovmSet {
public:
  explicit PovmSet(std::vector<CMatrix> elements);

  int outcome_count() const { return static_cast<int>(elements_.size()); }
  Eigen::Index dim() const { return elements_.front().rows(); }
  const CMatrix& element(int k) const { return elements_[static_cast<std::size_t>(k)]; }
  const std::vector<CMatrix>& elements() const { return elements_; }

  // True when every element is idempotent and elements are mutually
  // orthogonal (a PVM).
  bool is_projective(double tol = kStateTol) const;

private:
  std::vector<CMatrix> elements_;
};

// Full validation: PovmSet invariants plus per-element PSD via eigenvalues.
// Throws a diagnostic naming the violated invariant.
PovmSet validate_povm(const std::vector<CMatrix>& elements);

// Born probabilities p(k) = Tr(E_k σ). The imaginary part of each trace must
// vanish within 1e-9; real parts in [-1e-9, 0) are clipped to 0; the vector
// is renormalized (for a single-outcome support this makes the weight exactly
// 1.0, which downstream exact-arithmetic contracts rely on).
FiniteProbability measure(const DensityMatrix& sigma, const PovmSet& E);
FiniteProbability measure_pure(const PureState& s, const PovmSet& E);

// Projective collapse F_k|ψ⟩/‖F_k|ψ⟩‖. The element must be idempotent
// (within 1e-9) and the outcome probability above 1e-12.
PureState collapse(const PureState& s, const PovmSet& F, std::uint64_t k);

// Block PVM of 2^(n-c) projectors on an n-qubit space; projector j spans the
// contiguous basis range [j·2^c, (j+1)·2^c). Kept in structured form: the
// dense matrices would need O(2^(2n)) memory, while every operation on a
// block PVM is O(2^n) on amplitudes. to_povm_set materializes the dense
// elements for small n (validation, fixtures).
struct BlockPvm {
  int qubits;      // n
  int coarseness;  // c, 0 <= c <= n

  std::uint64_t block_size() const { return std::uint64_t{1} << coarseness; }
  std::uint64_t outcome_count() const { return std::uint64_t{1} << (qubits - coarseness); }
  // Width of the outcome label encoding, n - c bits.
  int outcome_width() const { return qubits - coarseness; }
};

BlockPvm block_pvm(int qubits, int coarseness);
PovmSet to_povm_set(const BlockPvm& F);

FiniteProbability measure(const DensityMatrix& sigma, const BlockPvm& F);
FiniteProbability measure_pure(const PureState& s, const BlockPvm& F);
PureState collapse(const PureState& s, const BlockPvm& F, std::uint64_t k);

// Classical prepare-and-measure channel: row i is measure(states[i], E),
// exactly (same code path).
ChannelKernel prepare_and_measure(const std::vector<DensityMatrix>& states, const PovmSet& E);

}  // namespace qsig
