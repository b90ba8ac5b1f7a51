#include "qsig/decoherence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsig {

DensityMatrix decohere(const DensityMatrix& rho, double t, const DecoherenceParams& params) {
  if (!(params.tau > 0.0)) {
    throw std::invalid_argument("decoherence time constant tau must be positive");
  }
  if (t < 0.0) {
    throw std::invalid_argument("decoherence time must be nonnegative");
  }
  // At t = 0 the factor is exactly 1.0 and the matrix passes through
  // bit-identical; diagonals are never touched at any t.
  const double factor = std::exp(-t / params.tau);
  CMatrix out = rho.matrix();
  const Eigen::Index d = out.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i != j) out(i, j) *= factor;
    }
  }
  return DensityMatrix(std::move(out));
}

FiniteProbability limit_decohere(const PureState& s) { return diagonal_probability(s); }

double sieve_purity(const PureState& s, double t, const DecoherenceParams& params) {
  return purity(decohere(outer_product(s), t, params));
}

double sieve_entropy(const PureState& s, double t, const DecoherenceParams& params) {
  return von_neumann_entropy(decohere(outer_product(s), t, params));
}

double sieve_algorithmic(const PureState& s, const ComplexityModel& model) {
  const int n = s.qubits();
  return self_info_hat(model, limit_decohere(s), OutcomeEncoding(n), std::to_string(n));
}

double pointer_average(int qubits, const ComplexityModel& model) {
  if (qubits < 1 || qubits > 12) {
    throw std::invalid_argument("pointer average supports 1 to 12 qubits");
  }
  const std::uint64_t d = std::uint64_t{1} << qubits;
  double total = 0.0;
  for (std::uint64_t i = 0; i < d; ++i) {
    total += sieve_algorithmic(PureState::basis(qubits, i), model);
  }
  return total / static_cast<double>(d);
}

}  // namespace qsig
