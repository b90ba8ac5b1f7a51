#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include <doctest.h>

#include "qsig/decoherence.hpp"
#include "qsig/sampling.hpp"
#include "support/oracles.hpp"

using namespace qsig;

namespace {

// Purity of the dephased projector directly from the amplitudes:
// Tr rho(t)^2 = sum_i |a_i|^4 + e^(-2t/tau) * sum_{i != j} |a_i|^2 |a_j|^2.
double purity_oracle(const PureState& s, double t, double tau) {
  const auto& a = s.amplitudes();
  double diag = 0.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double p = std::norm(a(i));
    diag += p * p;
    total += p;
  }
  const double off = total * total - diag;
  return diag + std::exp(-2.0 * t / tau) * off;
}

}  // namespace

TEST_CASE("decohere scales off-diagonals and leaves the diagonal untouched") {
  SeededRng rng(81);
  const PureState psi = haar_pure(3, rng);
  const DensityMatrix rho = outer_product(psi);
  const DecoherenceParams params{2.0};
  const double t = 0.7;
  const DensityMatrix out = decohere(rho, t, params);
  const double factor = std::exp(-t / params.tau);
  for (Eigen::Index i = 0; i < rho.matrix().rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.matrix().cols(); ++j) {
      if (i == j) {
        CHECK(out.matrix()(i, j) == rho.matrix()(i, j));  // bit-identical
      } else {
        CHECK(std::abs(out.matrix()(i, j) - factor * rho.matrix()(i, j)) < 1e-15);
      }
    }
  }

  CHECK_THROWS(decohere(rho, -0.1, params));
  CHECK_THROWS(decohere(rho, 1.0, DecoherenceParams{0.0}));
  CHECK_THROWS(decohere(rho, 1.0, DecoherenceParams{-1.0}));
  CHECK(decohere(rho, 0.0, params).matrix() == rho.matrix());
}

TEST_CASE("decohere satisfies the semigroup law") {
  SeededRng rng(82);
  const DecoherenceParams params{1.3};
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = mixed_state(3, MixtureSpec::parse("dirichlet:1.0:4"), rng);
    const DensityMatrix two_step = decohere(decohere(rho, 0.4, params), 0.9, params);
    const DensityMatrix one_step = decohere(rho, 1.3, params);
    const double diff = (two_step.matrix() - one_step.matrix()).cwiseAbs().maxCoeff();
    CHECK(diff < 1e-12);
  }
}

TEST_CASE("limit_decohere equals the diagonal readout") {
  SeededRng rng(83);
  for (int n : {1, 2, 4}) {
    const PureState psi = haar_pure(n, rng);
    const FiniteProbability limit = limit_decohere(psi);
    const FiniteProbability diag = diagonal_probability(psi);
    REQUIRE(limit.support_size() == diag.support_size());
    for (std::size_t i = 0; i < limit.support_size(); ++i) {
      CHECK(limit.indices()[i] == diag.indices()[i]);
      CHECK(limit.weights()[i] == diag.weights()[i]);
    }
  }
}

TEST_CASE("sieve purity closed forms") {
  const DecoherenceParams params{1.0};
  const PureState plus = PureState::uniform_superposition(1);

  CHECK(sieve_purity(plus, 0.0, params) == doctest::Approx(1.0).epsilon(1e-12));
  // Tr rho(tau)^2 = (1 + e^-2)/2 for |+>.
  CHECK(sieve_purity(plus, 1.0, params) ==
        doctest::Approx(oracles::kPurityPlusAtTau).epsilon(1e-12));

  // Pointer states have no off-diagonals: purity stays exactly 1.
  const PureState pointer = PureState::basis(3, 5);
  for (double t : {0.0, 0.5, 4.0}) {
    CHECK(sieve_purity(pointer, t, params) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // General states against the amplitude-level closed form.
  SeededRng rng(84);
  for (int trial = 0; trial < 10; ++trial) {
    const PureState psi = haar_pure(4, rng);
    for (double t : {0.0, 0.3, 1.0, 2.5}) {
      CHECK(sieve_purity(psi, t, params) ==
            doctest::Approx(purity_oracle(psi, t, 1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sieve entropy closed forms") {
  const DecoherenceParams params{1.0};
  const PureState plus = PureState::uniform_superposition(1);
  CHECK(sieve_entropy(plus, 0.0, params) < 1e-9);  // pure state: zero entropy
  // Eigenvalues of the dephased |+> projector at t = tau: (1 ± e^-1)/2.
  CHECK(sieve_entropy(plus, 1.0, params) ==
        doctest::Approx(oracles::entropy_plus_at_tau()).epsilon(1e-12));

  const PureState pointer = PureState::basis(2, 1);
  CHECK(sieve_entropy(pointer, 3.0, params) < 1e-9);  // nothing to dephase
}

TEST_CASE("purity decreases and entropy increases along the sieve") {
  const DecoherenceParams params{1.0};
  const std::vector<double> grid{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
  SeededRng rng(85);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState psi = haar_pure(4, rng);
    double prev_purity = 2.0;
    double prev_entropy = -1.0;
    for (double t : grid) {
      const double pu = sieve_purity(psi, t, params);
      const double en = sieve_entropy(psi, t, params);
      CHECK(pu <= prev_purity + 1e-12);
      CHECK(en >= prev_entropy - 1e-12);
      CHECK(pu > 0.0);
      CHECK(pu <= 1.0 + 1e-12);
      CHECK(en >= -1e-12);
      CHECK(en <= 4.0 + 1e-9);  // at most n bits
      prev_purity = pu;
      prev_entropy = en;
    }
  }
}

TEST_CASE("algorithmic sieve closed forms under the length model") {
  const LengthModel model;
  // Pointer states: the diagonal is a point mass, so the score is exactly n.
  for (int n : {1, 2, 4, 6}) {
    const PureState pointer = PureState::basis(n, (std::uint64_t{1} << n) - 1);
    CHECK(sieve_algorithmic(pointer, model) == static_cast<double>(n));
  }
  // |+>: uniform over {0, 1} gives log2(3/2).
  const PureState plus = PureState::uniform_superposition(1);
  CHECK(sieve_algorithmic(plus, model) ==
        doctest::Approx(std::log2(1.5)).epsilon(1e-12));
  // Uniform superposition on n qubits: log2(2 - 2^-n).
  for (int n : {2, 3, 5}) {
    const PureState uni = PureState::uniform_superposition(n);
    CHECK(sieve_algorithmic(uni, model) ==
          doctest::Approx(oracles::ip_length_uniform(n)).epsilon(1e-12));
  }
}

TEST_CASE("pointer average closed forms") {
  const LengthModel length;
  for (int n : {1, 2, 5, 8}) {
    CHECK(pointer_average(n, length) == static_cast<double>(n));  // exact
  }
  const ZeroModel zero;
  CHECK(pointer_average(4, zero) == 0.0);

  // Tiny model: every pointer state scores Î(enc(k):enc(k)) = K̂(enc(k)),
  // so the average is the mean of the table/fallback values over all labels.
  const auto table = std::make_shared<TinyMachineTable>(enumerate_tiny_machine(12, 4096));
  const TinyMachineModel tiny(table);
  const int n = 4;
  double mean = 0.0;
  const OutcomeEncoding enc(n);
  for (std::uint64_t k = 0; k < 16; ++k) {
    mean += mutual_info_hat(tiny, enc.encode(k), enc.encode(k), std::to_string(n));
  }
  mean /= 16.0;
  CHECK(pointer_average(n, tiny) == doctest::Approx(mean).epsilon(1e-12));

  CHECK_THROWS(pointer_average(0, length));
  CHECK_THROWS(pointer_average(21, length));
}
