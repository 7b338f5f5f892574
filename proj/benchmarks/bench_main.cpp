// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "cqff/evolve.hpp"
#include "cqff/overlaps.hpp"
#include "cqff/speceig.hpp"
#include "cqff/trotter.hpp"

using namespace cqff;

namespace {

struct Prepared {
  MomentSet ms;
  Mat e;
  EigenSolution sol;
  Vec alpha0;
};

Prepared prepare(const HamiltonianSpec& h, int K, std::uint64_t seed) {
  const StateVector phi = prepare_layered_random_state(h.n_qubits, 5, seed);
  Prepared p{build_moment_set(h, K), {}, {}, {}};
  ExpectationCache cache(phi, {});
  p.e = assemble_E(p.ms, cache);
  p.sol = solve_generalized(assemble_D(p.ms, h, cache), p.e);
  p.alpha0 = initial_alpha(p.ms);
  return p;
}

void BM_MomentSet(benchmark::State& state) {
  const HamiltonianSpec h = builtin_h2(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_moment_set(h, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_MomentSet)->Arg(1)->Arg(2)->Arg(3);

void BM_AssembleMatrices(benchmark::State& state) {
  const HamiltonianSpec h = builtin_h2(5);
  const StateVector phi = prepare_layered_random_state(5, 5, 1);
  const MomentSet ms = build_moment_set(h, 3);
  for (auto _ : state) {
    ExpectationCache cache(phi, {});
    benchmark::DoNotOptimize(assemble_E(ms, cache));
    benchmark::DoNotOptimize(assemble_D(ms, h, cache));
  }
}
BENCHMARK(BM_AssembleMatrices);

// the point of the method: the cost at T = 1e6 equals the cost at T = 1
void BM_FastForward(benchmark::State& state) {
  const Prepared p = prepare(builtin_h3(), 2, 1);
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fast_forward(p.sol, p.e, p.alpha0, t));
  }
}
BENCHMARK(BM_FastForward)->Arg(1)->Arg(1000000);

void BM_TrotterStep(benchmark::State& state) {
  const HamiltonianSpec h = builtin_h3();
  const StateVector psi0 = prepare_basis_state("10");
  TrotterConfig cfg;
  cfg.noise_p = kCalibratedNoiseP;
  DensityMatrix rho = trotter_simulate(h, psi0, 0, cfg);
  for (auto _ : state) {
    rho = trotter_advance(h, rho, 1, cfg);
    benchmark::DoNotOptimize(rho.entries);
  }
}
BENCHMARK(BM_TrotterStep);

}  // namespace

BENCHMARK_MAIN();
