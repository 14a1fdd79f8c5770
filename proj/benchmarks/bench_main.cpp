// Part of erestab. MIT license; see LICENSE at the repository root.
//
// Microbenchmarks for the hot paths: monodromy integration, Galerkin
// discretization and spectrum counting, monodromy classification, and the
// equal-mass chain evaluation.  Parameter choices sit inside the elliptic
// region away from degeneracies so timings reflect typical work, not
// boundary stalls.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "erestab/curves.hpp"
#include "erestab/essential.hpp"
#include "erestab/galerkin.hpp"
#include "erestab/model.hpp"
#include "erestab/regions.hpp"
#include "erestab/scan.hpp"
#include "erestab/sympl.hpp"

namespace {

// One monodromy matrix over a full period at moderate eccentricity; this is
// the dominant cost of every sweep cell.
void BM_monodromy(benchmark::State& state) {
  const auto params = erestab::make_params(1.5, 0.8, 0.5);
  for (auto _ : state) {
    auto result = erestab::monodromy(params, 1e-11);
    benchmark::DoNotOptimize(result.M);
  }
}

// Dense assembly of the spectral problem; cost grows as the square of the
// truncation order through the Toeplitz multiplication-operator block.
void BM_galerkin_assemble(benchmark::State& state) {
  const auto params = erestab::make_params(1.7, 0.9, 0.3);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto problem = erestab::assemble(params, 1, N);
    benchmark::DoNotOptimize(problem.matrix);
  }
}

// Negative-eigenvalue count on a pre-assembled problem; isolates the dense
// symmetric eigensolve from assembly.
void BM_galerkin_count(benchmark::State& state) {
  const auto params = erestab::make_params(1.7, 0.9, 0.3);
  const int N = static_cast<int>(state.range(0));
  const auto problem = erestab::assemble(params, 1, N);
  for (auto _ : state) {
    auto counts = erestab::count_spectrum(problem);
    benchmark::DoNotOptimize(counts);
  }
}

// Converged index-plus-nullity evaluation, assembly included, as used when
// tracing degenerate curves.
void BM_galerkin_index(benchmark::State& state) {
  const auto params = erestab::make_params(1.7, 0.9, 0.3);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto counts = erestab::index_and_nullity(erestab::assemble(params, -1, N));
    benchmark::DoNotOptimize(counts);
  }
}

// Normal-form classification of a fixed monodromy matrix: eigensolve,
// block grouping, and Krein-sign resolution.
void BM_classify(benchmark::State& state) {
  const auto result = erestab::monodromy(erestab::make_params(1.5, 0.8, 0.5));
  for (auto _ : state) {
    auto cls = erestab::classify(result.M);
    benchmark::DoNotOptimize(cls.blocks);
  }
}

// Closed-form circular-case region label; the cheap path taken by sweeps at
// zero eccentricity.
void BM_classify_e0(benchmark::State& state) {
  for (auto _ : state) {
    auto label = erestab::classify_e0(0.9, 0.8);
    benchmark::DoNotOptimize(label);
  }
}

// Full equal-mass chain: central-configuration masses, both stability
// parameter formulations, and their cross-check.
void BM_equal_mass_point(benchmark::State& state) {
  for (auto _ : state) {
    auto point = erestab::equal_mass_point(0.3);
    benchmark::DoNotOptimize(point);
  }
}

// Bisection for one degenerate beta at coarse resolution; each probe costs
// an assembly plus an eigensolve, so this bounds curve-tracing throughput.
void BM_degenerate_beta(benchmark::State& state) {
  for (auto _ : state) {
    auto sample = erestab::degenerate_beta(2.0, -1, 0.3, 0, 1e-6);
    benchmark::DoNotOptimize(sample);
  }
}

}  // namespace

BENCHMARK(BM_monodromy)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_galerkin_assemble)->Unit(benchmark::kMillisecond)
    ->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_galerkin_count)->Unit(benchmark::kMillisecond)
    ->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_galerkin_index)->Unit(benchmark::kMillisecond)
    ->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_classify)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_classify_e0)->Unit(benchmark::kNanosecond);
BENCHMARK(BM_equal_mass_point)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_degenerate_beta)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
