// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot paths: energy evaluation, circuit
// construction, statevector simulation, sampling, annealing and reduction.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "hubb/bfdcqo.hpp"
#include "hubb/cd.hpp"
#include "hubb/classical.hpp"
#include "hubb/hubo.hpp"
#include "hubb/quadratize.hpp"
#include "hubb/rng.hpp"
#include "hubb/statevector.hpp"

namespace {

hubb::HuboProblem chain(int n, std::uint64_t seed) {
  hubb::InstanceSpec spec;
  spec.n = n;
  spec.topology = hubb::Topology::kSparseChain;
  spec.seed = seed;
  return hubb::generate(spec);
}

hubb::SpinAssignment alternating(int n) {
  hubb::SpinAssignment z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = i % 2 == 0 ? 1 : -1;
  return z;
}

void BM_Energy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hubb::HuboProblem problem = chain(n, 11);
  const hubb::SpinAssignment z = alternating(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem.energy(z));
  }
}
BENCHMARK(BM_Energy)->Arg(16)->Arg(64)->Arg(156);

void BM_BuildCircuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hubb::HuboProblem problem = chain(n, 12);
  const hubb::DriverConfig driver = hubb::DriverConfig::uniform(n);
  const hubb::Schedule schedule;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hubb::build_cd_circuit(problem, driver, schedule));
  }
}
BENCHMARK(BM_BuildCircuit)->Arg(8)->Arg(16)->Arg(64);

void BM_SimulateCircuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hubb::HuboProblem problem = chain(n, 13);
  const hubb::DriverConfig driver = hubb::DriverConfig::uniform(n);
  const hubb::CdCircuit circuit = hubb::build_cd_circuit(problem, driver, hubb::Schedule{});
  for (auto _ : state) {
    const hubb::StateVector psi = hubb::simulate_circuit(circuit);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
}
BENCHMARK(BM_SimulateCircuit)->Arg(8)->Arg(12)->Arg(16);

void BM_Sample(benchmark::State& state) {
  const int n = 12;
  const hubb::HuboProblem problem = chain(n, 14);
  const hubb::DriverConfig driver = hubb::DriverConfig::uniform(n);
  const hubb::CdCircuit circuit = hubb::build_cd_circuit(problem, driver, hubb::Schedule{});
  const hubb::StateVector psi = hubb::simulate_circuit(circuit);
  const int shots = static_cast<int>(state.range(0));
  hubb::Rng rng(15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi.sample(problem, shots, rng));
  }
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(10000);

void BM_SimulatedAnnealing(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hubb::HuboProblem problem = chain(n, 16);
  hubb::SaConfig config;
  config.sweeps = 200;
  config.reads = 10;
  std::uint64_t round = 0;
  for (auto _ : state) {
    config.rng_seed = hubb::derive_seed(17, round++);
    benchmark::DoNotOptimize(hubb::simulated_annealing(problem, config));
  }
}
BENCHMARK(BM_SimulatedAnnealing)->Arg(16)->Arg(64)->Arg(156);

void BM_BfdcqoIteration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hubb::HuboProblem problem = chain(n, 18);
  hubb::BfdcqoConfig config;
  config.iterations = 1;
  config.n_shots = 1000;
  std::uint64_t round = 0;
  for (auto _ : state) {
    config.rng_seed = hubb::derive_seed(19, round++);
    benchmark::DoNotOptimize(
        hubb::run_bfdcqo(problem, hubb::BiasField::zero(n), config));
  }
}
BENCHMARK(BM_BfdcqoIteration)->Arg(8)->Arg(12);

void BM_Quadratize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hubb::HuboProblem problem = chain(n, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hubb::hubo_to_qubo(problem, 10.0));
  }
}
BENCHMARK(BM_Quadratize)->Arg(16)->Arg(64)->Arg(156);

}  // namespace

BENCHMARK_MAIN();
