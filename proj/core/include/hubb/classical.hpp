// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Classical baselines and oracles: simulated annealing that works directly on
// higher-order terms (no auxiliary variables), zero-temperature greedy local
// search, greedy refinement of sample sets, and exhaustive brute force.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hubb/hubo.hpp"
#include "hubb/ledger.hpp"

namespace hubb {

struct SaConfig {
  int sweeps = 200;
  int reads = 100;
  // Unset endpoints are calibrated per problem: t_initial = max |delta E|
  // over 1000 random probes, t_final = 1e-3 * t_initial.
  std::optional<double> t_initial;
  std::optional<double> t_final;
  std::uint64_t rng_seed = 0;
};

// Geometric cooling ratio r = (t_final/t_initial)^(1/(sweeps-1)); r = 1 when
// sweeps == 1.
double sa_cooling_ratio(double t_initial, double t_final, int sweeps);

// Metropolis acceptance: true when delta <= 0, otherwise when
// u < exp(-delta/temperature). u is a uniform draw from [0, 1).
bool sa_accept(double delta, double temperature, double u);

// Per read: random +-1 start, `sweeps` shuffled single-flip sweeps along the
// cooling schedule; the read's final assignment enters the returned set.
// Ledger: sa_flips grows by sweeps * n per read (every proposal costs one
// evaluation). Randomness: probes draw from derive_seed(rng_seed, 0), read r
// from derive_seed(rng_seed, r + 1).
std::pair<SampleSet, FunctionEvalCounter> simulated_annealing(const HuboProblem& problem,
                                                              const SaConfig& config);

struct GreedyConfig {
  int sweeps = 15;
  int top_k = 150;
  std::uint64_t rng_seed = 0;
};

// Zero-temperature descent: per sweep, visit indices in a fresh shuffled
// order and flip only on strict improvement; stops early after a flip-free
// sweep. When delta_evals is given it accumulates the number of delta-energy
// evaluations performed.
SpinAssignment greedy_local_search(const HuboProblem& problem, SpinAssignment z,
                                   const GreedyConfig& config,
                                   std::uint64_t* delta_evals = nullptr);

// Refines the top_k lowest-energy distinct assignments of the set (record r
// reseeded from derive_seed(rng_seed, r)), merges the result back together.
// Second member is the delta-evaluation count for the ledger.
std::pair<SampleSet, std::uint64_t> greedy_post_process(const HuboProblem& problem,
                                                        const SampleSet& samples,
                                                        const GreedyConfig& config);

struct BruteForceResult {
  SpinAssignment z;
  double energy;
};

// Exhaustive Gray-code scan (incremental delta energies, exact energy
// recomputed at every improvement); ties resolve to the lowest basis index.
// Requires n <= 24.
BruteForceResult brute_force(const HuboProblem& problem);

// All 2^n energies, sorted ascending; every entry evaluated exactly.
std::vector<double> brute_force_spectrum(const HuboProblem& problem);

}  // namespace hubb
