#include <random>

#include <benchmark/benchmark.h>

#include "trigapprox/fourier.hpp"
#include "trigapprox/modulus.hpp"
#include "trigapprox/rate_lab.hpp"
#include "trigapprox/sequence_classes.hpp"
#include "trigapprox/summability.hpp"

using namespace trigapprox;

namespace {

SampledPeriodicFunction weierstrass(std::size_t n) {
  return zoo_function(zoo::Weierstrass{0.5, 8}, Grid(n));
}

void BM_Analyze(benchmark::State& state) {
  const auto f = weierstrass(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(f));
  }
}
BENCHMARK(BM_Analyze)->Arg(1024)->Arg(4096);

void BM_MatrixMean(benchmark::State& state) {
  const auto f = weierstrass(4096);
  const auto c = analyze(f);
  const auto row = MatrixFamily::cesaro().row(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_mean(c, row, f.grid()));
  }
}
BENCHMARK(BM_MatrixMean)->Arg(64)->Arg(512);

void BM_MatrixMeanNaive(benchmark::State& state) {
  const auto f = weierstrass(4096);
  const auto c = analyze(f);
  const auto row = MatrixFamily::cesaro().row(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_mean_naive(c, row, f.grid()));
  }
}
BENCHMARK(BM_MatrixMeanNaive)->Arg(64)->Arg(512);

void BM_ErrorCurve(benchmark::State& state) {
  const auto f = weierstrass(4096);
  const auto n = geometric_n_list(16, 512);
  for (auto _ : state) {
    benchmark::DoNotOptimize(error_curve(MatrixFamily::cesaro(), f, 2.0, n));
  }
}
BENCHMARK(BM_ErrorCurve)->Unit(benchmark::kMillisecond);

void BM_KernelSplit(benchmark::State& state) {
  const auto row = MatrixFamily::norlund(norlund::Linear{}).row(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_l1_split(row));
  }
}
BENCHMARK(BM_KernelSplit)->Arg(32)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (double& x : v) {
    x = u(rng);
  }
  const FiniteSequence seq(v, Semantics::row);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(seq));
  }
}
BENCHMARK(BM_Classify)->Arg(64)->Arg(4096);

void BM_ModulusCurve(benchmark::State& state) {
  const auto f = weierstrass(4096);
  const auto deltas = default_delta_grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(modulus_curve(f, 2.0, deltas));
  }
}
BENCHMARK(BM_ModulusCurve)->Unit(benchmark::kMillisecond);

void BM_ClauseCheck(benchmark::State& state) {
  ClauseCheckOptions opt;
  opt.n_last = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(clause_check(MatrixFamily::norlund(norlund::Linear{}), 1.0, 1.0, opt));
  }
}
BENCHMARK(BM_ClauseCheck)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
