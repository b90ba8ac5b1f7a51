// Microbenchmarks for the hot paths: Haar draws, block measurements, the
// self-information estimator and the decoherence sieve. Not wired into ctest;
// run build/benchmarks/qsig_bench directly.

#include <benchmark/benchmark.h>

#include "qsig/complexity.hpp"
#include "qsig/decoherence.hpp"
#include "qsig/measurement.hpp"
#include "qsig/quantum.hpp"
#include "qsig/sampling.hpp"

namespace {

void bm_haar_pure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsig::SeededRng rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsig::haar_pure(n, rng));
  }
}
BENCHMARK(bm_haar_pure)->Arg(6)->Arg(8)->Arg(10);

void bm_measure_block(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsig::SeededRng rng(12);
  const qsig::PureState psi = qsig::haar_pure(n, rng);
  const qsig::BlockPvm blocks = qsig::block_pvm(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsig::measure_pure(psi, blocks));
  }
}
BENCHMARK(bm_measure_block)->Arg(6)->Arg(8)->Arg(10);

void bm_measure_dense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsig::SeededRng rng(13);
  const qsig::DensityMatrix sigma = qsig::outer_product(qsig::haar_pure(n, rng));
  const qsig::PovmSet povm = qsig::to_povm_set(qsig::block_pvm(n, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsig::measure(sigma, povm));
  }
}
BENCHMARK(bm_measure_dense)->Arg(4)->Arg(6)->Arg(8);

void bm_self_info_length(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsig::SeededRng rng(14);
  const qsig::PureState psi = qsig::haar_pure(n, rng);
  const qsig::FiniteProbability q = qsig::measure_pure(psi, qsig::block_pvm(n, 0));
  const qsig::LengthModel model;
  const qsig::OutcomeEncoding enc(n);
  const std::string side = std::to_string(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsig::self_info_hat(model, q, enc, side));
  }
}
BENCHMARK(bm_self_info_length)->Arg(4)->Arg(6)->Arg(8);

void bm_codec_base(benchmark::State& state) {
  const qsig::CodecModel model;  // memo hits after the first pass
  const qsig::Bits x = qsig::Bits::from_index(0x5a5a, 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.base_complexity(x, "16"));
  }
}
BENCHMARK(bm_codec_base);

void bm_sieve_entropy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsig::SeededRng rng(15);
  const qsig::PureState psi = qsig::haar_pure(n, rng);
  const qsig::DecoherenceParams params{1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsig::sieve_entropy(psi, 0.5, params));
  }
}
BENCHMARK(bm_sieve_entropy)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
