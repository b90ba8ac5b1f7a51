#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include <doctest.h>

#include "qsig/measurement.hpp"
#include "qsig/quantum.hpp"
#include "qsig/sampling.hpp"
#include "qsig/stats.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace qsig;

TEST_CASE("raw stream is standard mt19937_64") {
  // The C++ standard pins the 10000th output of a default-seeded (5489)
  // mt19937_64; this anchors the stream against accidental engine changes.
  SeededRng rng(5489);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next_u64();
  CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("identical seeds give identical streams") {
  SeededRng a(99), b(99);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

  SeededRng c(99), d(100);
  bool any_diff = false;
  for (int i = 0; i < 10; ++i) any_diff |= (c.next_u64() != d.next_u64());
  CHECK(any_diff);
}

TEST_CASE("uniform01 is the pinned 53-bit transform") {
  SeededRng value(7), raw(7);
  for (int i = 0; i < 200; ++i) {
    const double expected =
        static_cast<double>(raw.next_u64() >> 11) * 0x1.0p-53;
    CHECK(value.uniform01() == expected);
  }
}

TEST_CASE("normal is the pinned Box-Muller transform with cached spare") {
  SeededRng value(8), raw(8);
  for (int pair = 0; pair < 50; ++pair) {
    double u1 = static_cast<double>(raw.next_u64() >> 11) * 0x1.0p-53;
    while (u1 == 0.0) u1 = static_cast<double>(raw.next_u64() >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(raw.next_u64() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    CHECK(value.normal() == r * std::cos(angle));
    CHECK(value.normal() == r * std::sin(angle));
  }
}

TEST_CASE("normal and gamma moments") {
  SeededRng rng(9);
  const int n = 20000;
  std::vector<double> zs(n);
  for (double& z : zs) z = rng.normal();
  CHECK(std::abs(mean(zs)) < 3.0 / std::sqrt(static_cast<double>(n)));
  const double sd = sample_stddev(zs);
  CHECK(sd > 0.97);
  CHECK(sd < 1.03);

  for (double alpha : {0.6, 1.0, 2.5, 7.0}) {
    std::vector<double> gs(n);
    for (double& g : gs) g = rng.gamma(alpha);
    // gamma(alpha,1): mean alpha, variance alpha.
    CHECK(std::abs(mean(gs) - alpha) < 3.0 * std::sqrt(alpha / n));
    for (double g : gs) CHECK(g > 0.0);
  }
}

TEST_CASE("derive_seed separates trials and streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      for (std::uint64_t t = 0; t < 16; ++t) {
        seen.insert(derive_seed(7, a, b, t));
      }
    }
  }
  CHECK(seen.size() == 8 * 8 * 16);  // no collisions across the lattice
  CHECK(derive_seed(7, 1, 2, 3) == derive_seed(7, 1, 2, 3));
  CHECK(derive_seed(7, 1, 2, 3) != derive_seed(8, 1, 2, 3));
}

TEST_CASE("haar_pure is normalized and deterministic") {
  SeededRng a(41), b(41);
  const PureState s1 = haar_pure(3, a);
  const PureState s2 = haar_pure(3, b);
  CHECK((s1.amplitudes() - s2.amplitudes()).norm() == 0.0);
  CHECK(std::abs(s1.amplitudes().norm() - 1.0) < 1e-12);
}

TEST_CASE("haar_pure is unitarily invariant") {
  // |<0|psi>|^2 must have the same distribution before and after a fixed
  // nontrivial unitary; two-sample KS at significance 0.01.
  const int n = 10000;
  SeededRng urng(42);
  const CMatrix u = generators::random_unitary(4, urng);

  SeededRng ra(43), rb(45);
  std::vector<double> plain(n), rotated(n);
  for (int i = 0; i < n; ++i) {
    plain[i] = std::norm(haar_pure(2, ra).amplitudes()(0));
    const CVector v = u * haar_pure(2, rb).amplitudes();
    rotated[i] = std::norm(v(0));
  }
  const double d = ks_statistic(plain, rotated);
  CHECK(d < oracles::kKs01Coefficient * std::sqrt(2.0 / n));
}

TEST_CASE("mixture spec parsing") {
  const MixtureSpec spec = MixtureSpec::parse("dirichlet:0.5:8");
  CHECK(spec.simplex_law == "dirichlet");
  CHECK(spec.law_param == 0.5);
  CHECK(spec.component_count == 8);
  CHECK(MixtureSpec::parse(spec.str()).component_count == 8);

  CHECK_THROWS(MixtureSpec::parse("dirichlet:1.0"));
  CHECK_THROWS(MixtureSpec::parse("dirichlet:1.0:0"));
  CHECK_THROWS(MixtureSpec::parse(""));
}

TEST_CASE("dirichlet simplex law has the right component means") {
  const MixtureSpec spec = MixtureSpec::parse("dirichlet:1.0:4");
  SeededRng rng(45);
  const int n = 10000;
  std::vector<double> first(n);
  double total_min = 1.0;
  for (int i = 0; i < n; ++i) {
    const std::vector<double> w = sample_simplex(spec, rng);
    REQUIRE(w.size() == 4);
    double sum = 0.0;
    for (double x : w) {
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    first[i] = w[0];
    total_min = std::min(total_min, w[0]);
  }
  const double se = std::sqrt(oracles::kDirichlet4ComponentVar / n);
  CHECK(std::abs(mean(first) - 0.25) < 3.0 * se);
}

TEST_CASE("simplex law registry accepts custom laws") {
  register_simplex_law("degenerate-first", [](double, int components, SeededRng&) {
    std::vector<double> w(static_cast<std::size_t>(components), 0.0);
    w[0] = 1.0;
    return w;
  });
  MixtureSpec spec;
  spec.simplex_law = "degenerate-first";
  spec.component_count = 3;
  SeededRng rng(46);
  const std::vector<double> w = sample_simplex(spec, rng);
  CHECK(w[0] == 1.0);
  CHECK(w[1] == 0.0);

  MixtureSpec unknown;
  unknown.simplex_law = "no-such-law";
  CHECK_THROWS(sample_simplex(unknown, rng));
}

TEST_CASE("mixed_state produces valid density matrices") {
  SeededRng rng(47);
  const MixtureSpec spec = MixtureSpec::parse("dirichlet:1.0:4");
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = mixed_state(2, spec, rng);
    validate_density(rho);
    CHECK(purity(rho) <= 1.0 + 1e-9);
  }

  // M = 1 is a pure state in density form.
  const MixtureSpec single = MixtureSpec::parse("dirichlet:1.0:1");
  const DensityMatrix pure = mixed_state(2, single, rng);
  CHECK(std::abs(purity(pure) - 1.0) < 1e-9);
}

TEST_CASE("collapsed_sample lies exactly in its projector span") {
  SeededRng rng(48);
  for (int trial = 0; trial < 20; ++trial) {
    const CollapsedSample cs = collapsed_sample(4, 2, rng);
    const BlockPvm blocks = block_pvm(4, 2);
    const std::uint64_t lo = cs.outcome * blocks.block_size();
    const std::uint64_t hi = lo + blocks.block_size();
    double outside = 0.0;
    for (std::uint64_t i = 0; i < 16; ++i) {
      if (i < lo || i >= hi) outside += std::norm(cs.state.amplitudes()(static_cast<Eigen::Index>(i)));
    }
    CHECK(outside <= 1e-18);  // projector support is exact, not approximate
    CHECK(std::abs(cs.state.amplitudes().norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("collapsed_sample outcomes are uniform over blocks") {
  // Haar symmetry makes every block equally likely; chi-square over the 16
  // blocks of (n, c) = (6, 2) at significance 0.01.
  SeededRng rng(49);
  std::vector<std::uint64_t> counts(16, 0);
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    ++counts[collapsed_sample(6, 2, rng).outcome];
  }
  CHECK(chi_square_uniform(counts) < oracles::kChiSquare01Df15);
}

TEST_CASE("biased_prior_sample respects the weight bound") {
  SeededRng rng(50);
  // weight == bound accepts on the first draw every time.
  std::uint64_t attempts = 0;
  const PureState s = biased_prior_sample(
      2, 1.0, [](const PureState&) { return 2.0; }, rng, &attempts);
  CHECK(attempts == 1);
  CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-12);

  CHECK_THROWS(biased_prior_sample(
      2, 1.0, [](const PureState&) { return 2.5; }, rng));  // above 2^c
  CHECK_THROWS(biased_prior_sample(
      2, 1.0, [](const PureState&) { return -0.1; }, rng));
}

TEST_CASE("biased_prior_sample median split accepts about half") {
  // For one qubit |amp(0)|^2 is uniform on [0,1], so weighting the upper
  // half with weight 2 (bound 2^1) accepts with probability 1/2.
  SeededRng rng(51);
  const int n = 10000;
  std::uint64_t total_attempts = 0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t attempts = 0;
    biased_prior_sample(
        1, 1.0,
        [](const PureState& psi) {
          return std::norm(psi.amplitudes()(0)) > 0.5 ? 2.0 : 0.0;
        },
        rng, &attempts);
    total_attempts += attempts;
  }
  const double rate = static_cast<double>(n) / static_cast<double>(total_attempts);
  // 3-sigma band for a Bernoulli(1/2) acceptance rate over ~2n draws.
  CHECK(rate > 0.5 - 3.0 * 0.5 / std::sqrt(static_cast<double>(total_attempts)) - 0.01);
  CHECK(rate < 0.5 + 3.0 * 0.5 / std::sqrt(static_cast<double>(total_attempts)) + 0.01);
}
