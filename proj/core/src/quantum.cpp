#include "qsig/quantum.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qsig {

namespace {

// Returns n with d = 2^n, or throws.
int qubit_count_for_dim(Eigen::Index d, const char* what) {
  if (d < 1) throw std::invalid_argument(std::string(what) + " has empty dimension");
  int n = 0;
  Eigen::Index v = d;
  while ((v & 1) == 0) {
    v >>= 1;
    ++n;
  }
  if (v != 1) {
    throw std::invalid_argument(std::string(what) + " dimension must be a power of two");
  }
  return n;
}

}  // namespace

PureState::PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  qubits_ = qubit_count_for_dim(amplitudes_.size(), "pure state");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kStateTol) {
    throw std::invalid_argument("pure state amplitudes must have unit norm within 1e-9");
  }
}

PureState PureState::basis(int qubits, std::uint64_t index) {
  if (qubits < 0 || qubits >= 48) {
    throw std::invalid_argument("qubit count out of supported range");
  }
  const Eigen::Index d = Eigen::Index{1} << qubits;
  if (index >= static_cast<std::uint64_t>(d)) {
    throw std::invalid_argument("basis index out of range");
  }
  CVector v = CVector::Zero(d);
  v(static_cast<Eigen::Index>(index)) = Complex(1.0, 0.0);
  return PureState(std::move(v));
}

PureState PureState::uniform_superposition(int qubits) {
  if (qubits < 0 || qubits >= 48) {
    throw std::invalid_argument("qubit count out of supported range");
  }
  const Eigen::Index d = Eigen::Index{1} << qubits;
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(CVector::Constant(d, Complex(a, 0.0)));
}

JointState::JointState(CVector amplitudes, Eigen::Index system_dim, Eigen::Index env_dim)
    : amplitudes_(std::move(amplitudes)), system_dim_(system_dim), env_dim_(env_dim) {
  if (system_dim_ < 1 || env_dim_ < 1 || amplitudes_.size() != system_dim_ * env_dim_) {
    throw std::invalid_argument("joint state dimensions must multiply to the vector length");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kStateTol) {
    throw std::invalid_argument("joint state amplitudes must have unit norm within 1e-9");
  }
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  qubits_ = qubit_count_for_dim(entries_.rows(), "density matrix");
  const Eigen::Index d = entries_.rows();
  double trace_re = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const Complex diag = entries_(i, i);
    if (std::abs(diag.imag()) > kStateTol || diag.real() < -kStateTol) {
      throw std::invalid_argument("density matrix diagonal must be real and nonnegative");
    }
    trace_re += diag.real();
    for (Eigen::Index j = i + 1; j < d; ++j) {
      if (std::abs(entries_(i, j) - std::conj(entries_(j, i))) > kStateTol) {
        throw std::invalid_argument("density matrix must be Hermitian within 1e-9");
      }
    }
  }
  if (std::abs(trace_re - 1.0) > kStateTol) {
    throw std::invalid_argument("density matrix trace must equal 1 within 1e-9");
  }
}

void validate_density(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue computation failed on density matrix");
  }
  if (es.eigenvalues().minCoeff() < -kStateTol) {
    throw std::invalid_argument("density matrix has an eigenvalue below -1e-9");
  }
}

DensityMatrix outer_product(const PureState& s) {
  const CVector& a = s.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

DensityMatrix partial_trace_env(const JointState& j) {
  const Eigen::Index ds = j.system_dim();
  const Eigen::Index de = j.env_dim();
  const CVector& psi = j.amplitudes();
  CMatrix rho = CMatrix::Zero(ds, ds);
  for (Eigen::Index a = 0; a < ds; ++a) {
    for (Eigen::Index b = 0; b < ds; ++b) {
      Complex acc(0.0, 0.0);
      for (Eigen::Index e = 0; e < de; ++e) {
        acc += psi(a * de + e) * std::conj(psi(b * de + e));
      }
      rho(a, b) = acc;
    }
  }
  return DensityMatrix(std::move(rho));
}

double purity(const DensityMatrix& rho) {
  // Tr ρ² = Σ_ij |ρ_ij|² for Hermitian ρ.
  return rho.matrix().squaredNorm();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue computation failed on density matrix");
  }
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lambda = es.eigenvalues()(i);
    if (lambda < -1e-6) {
      throw std::invalid_argument("density matrix is not positive semidefinite");
    }
    lambda = std::min(std::max(lambda, 0.0), 1.0);
    if (lambda > 0.0) h -= lambda * std::log2(lambda);
  }
  return h;
}

FiniteProbability diagonal_probability(const PureState& s) {
  const CVector& a = s.amplitudes();
  std::vector<std::uint64_t> idx(static_cast<std::size_t>(a.size()));
  std::iota(idx.begin(), idx.end(), std::uint64_t{0});
  std::vector<double> w(idx.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    w[static_cast<std::size_t>(i)] = std::norm(a(i));
  }
  // Renormalize: a norm at the 1e-9 state tolerance would put the squared sum
  // up to 2e-9 from 1. For basis states and power-of-two uniforms the total is
  // exactly 1.0, so the division leaves those weights bit-identical.
  return FiniteProbability(std::move(idx), std::move(w), true);
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

JointState joint_product(const PureState& sys, const CVector& env_ket) {
  return JointState(kron(sys.amplitudes(), env_ket), sys.dim(), env_ket.size());
}

}  // namespace qsig
