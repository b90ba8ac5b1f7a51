#include "qsig/measurement.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qsig {

namespace {

// Tr(Eσ) for Hermitian E: Σ_ij conj(E(j,i))·σ(j,i), O(d²).
Complex trace_product(const CMatrix& e, const CMatrix& sigma) {
  return e.conjugate().cwiseProduct(sigma).sum();
}

FiniteProbability born_vector(std::vector<double> raw) {
  std::vector<std::uint64_t> idx(raw.size());
  std::iota(idx.begin(), idx.end(), std::uint64_t{0});
  for (double& p : raw) {
    if (p < -kStateTol) {
      throw std::runtime_error("measurement produced a probability below -1e-9");
    }
    if (p < 0.0) p = 0.0;
  }
  return FiniteProbability(std::move(idx), std::move(raw), true);
}

}  // namespace

PovmSet::PovmSet(std::vector<CMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw std::invalid_argument("POVM must have at least one element");
  }
  const Eigen::Index d = elements_.front().rows();
  if (d < 1) throw std::invalid_argument("POVM elements must be nonempty matrices");
  CMatrix sum = CMatrix::Zero(d, d);
  for (const CMatrix& e : elements_) {
    if (e.rows() != d || e.cols() != d) {
      throw std::invalid_argument("POVM elements must be square matrices of equal dimension");
    }
    for (Eigen::Index i = 0; i < d; ++i) {
      const Complex diag = e(i, i);
      if (std::abs(diag.imag()) > kStateTol || diag.real() < -kStateTol) {
        throw std::invalid_argument("POVM element diagonal must be real and nonnegative");
      }
      for (Eigen::Index j = i + 1; j < d; ++j) {
        if (std::abs(e(i, j) - std::conj(e(j, i))) > kStateTol) {
          throw std::invalid_argument("POVM element is not Hermitian within 1e-9");
        }
      }
    }
    sum += e;
  }
  if ((sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kStateTol) {
    throw std::invalid_argument("POVM elements must sum to the identity within 1e-9");
  }
}

bool PovmSet::is_projective(double tol) const {
  const int m = outcome_count();
  for (int k = 0; k < m; ++k) {
    const CMatrix& e = element(k);
    if ((e * e - e).cwiseAbs().maxCoeff() > tol) return false;
  }
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      if ((element(j) * element(k)).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

PovmSet validate_povm(const std::vector<CMatrix>& elements) {
  PovmSet set(elements);  // squareness, Hermiticity, completeness, diagonal
  for (int k = 0; k < set.outcome_count(); ++k) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(set.element(k), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("eigenvalue computation failed on POVM element " +
                               std::to_string(k));
    }
    if (es.eigenvalues().minCoeff() < -kStateTol) {
      throw std::invalid_argument("POVM element " + std::to_string(k) +
                                  " is not positive semidefinite within 1e-9");
    }
  }
  return set;
}

FiniteProbability measure(const DensityMatrix& sigma, const PovmSet& E) {
  if (sigma.dim() != E.dim()) {
    throw std::invalid_argument("state and POVM dimensions do not match");
  }
  std::vector<double> raw(static_cast<std::size_t>(E.outcome_count()));
  for (int k = 0; k < E.outcome_count(); ++k) {
    const Complex t = trace_product(E.element(k), sigma.matrix());
    if (std::abs(t.imag()) > kStateTol) {
      throw std::runtime_error("Tr(E_k sigma) has imaginary part above 1e-9");
    }
    raw[static_cast<std::size_t>(k)] = t.real();
  }
  return born_vector(std::move(raw));
}

FiniteProbability measure_pure(const PureState& s, const PovmSet& E) {
  if (s.dim() != E.dim()) {
    throw std::invalid_argument("state and POVM dimensions do not match");
  }
  std::vector<double> raw(static_cast<std::size_t>(E.outcome_count()));
  for (int k = 0; k < E.outcome_count(); ++k) {
    const Complex t = s.amplitudes().dot(E.element(k) * s.amplitudes());
    if (std::abs(t.imag()) > kStateTol) {
      throw std::runtime_error("<psi|E_k|psi> has imaginary part above 1e-9");
    }
    raw[static_cast<std::size_t>(k)] = t.real();
  }
  return born_vector(std::move(raw));
}

PureState collapse(const PureState& s, const PovmSet& F, std::uint64_t k) {
  if (k >= static_cast<std::uint64_t>(F.outcome_count())) {
    throw std::invalid_argument("collapse outcome index out of range");
  }
  if (s.dim() != F.dim()) {
    throw std::invalid_argument("state and PVM dimensions do not match");
  }
  const CMatrix& e = F.element(static_cast<int>(k));
  if ((e * e - e).cwiseAbs().maxCoeff() > kStateTol) {
    throw std::invalid_argument("collapse requires a projective (idempotent) element");
  }
  CVector projected = e * s.amplitudes();
  const double p = projected.squaredNorm();
  if (p <= 1e-12) {
    throw std::invalid_argument("cannot collapse onto an outcome of probability <= 1e-12");
  }
  projected /= std::sqrt(p);
  return PureState(std::move(projected));
}

BlockPvm block_pvm(int qubits, int coarseness) {
  if (qubits < 1 || qubits >= 48) {
    throw std::invalid_argument("qubit count out of supported range");
  }
  if (coarseness < 0 || coarseness > qubits) {
    throw std::invalid_argument("block coarseness must lie in [0, n]");
  }
  return BlockPvm{qubits, coarseness};
}

PovmSet to_povm_set(const BlockPvm& F) {
  const Eigen::Index d = Eigen::Index{1} << F.qubits;
  const std::uint64_t m = F.outcome_count();
  const std::uint64_t bs = F.block_size();
  std::vector<CMatrix> elements;
  elements.reserve(m);
  for (std::uint64_t j = 0; j < m; ++j) {
    CMatrix e = CMatrix::Zero(d, d);
    for (std::uint64_t i = j * bs; i < (j + 1) * bs; ++i) {
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = Complex(1.0, 0.0);
    }
    elements.push_back(std::move(e));
  }
  return PovmSet(std::move(elements));
}

FiniteProbability measure(const DensityMatrix& sigma, const BlockPvm& F) {
  if (sigma.dim() != (Eigen::Index{1} << F.qubits)) {
    throw std::invalid_argument("state and block PVM dimensions do not match");
  }
  const std::uint64_t m = F.outcome_count();
  const std::uint64_t bs = F.block_size();
  std::vector<double> raw(m, 0.0);
  for (std::uint64_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::uint64_t i = j * bs; i < (j + 1) * bs; ++i) {
      acc += sigma.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    raw[j] = acc;
  }
  return born_vector(std::move(raw));
}

FiniteProbability measure_pure(const PureState& s, const BlockPvm& F) {
  if (s.qubits() != F.qubits) {
    throw std::invalid_argument("state and block PVM dimensions do not match");
  }
  const std::uint64_t m = F.outcome_count();
  const std::uint64_t bs = F.block_size();
  std::vector<double> raw(m, 0.0);
  for (std::uint64_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::uint64_t i = j * bs; i < (j + 1) * bs; ++i) {
      acc += std::norm(s.amplitudes()(static_cast<Eigen::Index>(i)));
    }
    raw[j] = acc;
  }
  return born_vector(std::move(raw));
}

PureState collapse(const PureState& s, const BlockPvm& F, std::uint64_t k) {
  if (s.qubits() != F.qubits) {
    throw std::invalid_argument("state and block PVM dimensions do not match");
  }
  if (k >= F.outcome_count()) {
    throw std::invalid_argument("collapse outcome index out of range");
  }
  const std::uint64_t bs = F.block_size();
  const CVector& a = s.amplitudes();
  double p = 0.0;
  for (std::uint64_t i = k * bs; i < (k + 1) * bs; ++i) {
    p += std::norm(a(static_cast<Eigen::Index>(i)));
  }
  if (p <= 1e-12) {
    throw std::invalid_argument("cannot collapse onto an outcome of probability <= 1e-12");
  }
  CVector out = CVector::Zero(a.size());
  const double scale = 1.0 / std::sqrt(p);
  for (std::uint64_t i = k * bs; i < (k + 1) * bs; ++i) {
    out(static_cast<Eigen::Index>(i)) = a(static_cast<Eigen::Index>(i)) * scale;
  }
  return PureState(std::move(out));
}

ChannelKernel prepare_and_measure(const std::vector<DensityMatrix>& states, const PovmSet& E) {
  if (states.empty()) {
    throw std::invalid_argument("prepare_and_measure needs at least one state");
  }
  std::map<std::uint64_t, FiniteProbability> rows;
  for (std::size_t i = 0; i < states.size(); ++i) {
    rows.emplace(static_cast<std::uint64_t>(i), measure(states[i], E));
  }
  return ChannelKernel(std::move(rows));
}

}  // namespace qsig
