// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Bias-field feedback loop: build the counterdiabatic circuit for the current
// longitudinal biases, simulate it, measure, update the biases from the
// lowest-energy fraction of the shots, repeat.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hubb/cd.hpp"
#include "hubb/classical.hpp"
#include "hubb/hubo.hpp"
#include "hubb/ledger.hpp"

namespace hubb {

// Longitudinal fields of the driver Hamiltonian. Entries land in [-1, 1]
// after a CVaR update (means of +-1 spins); warm starts and branch
// constraints may inject larger magnitudes.
struct BiasField {
  std::vector<double> hb;

  static BiasField zero(int n) { return {std::vector<double>(static_cast<std::size_t>(n), 0.0)}; }
};

struct BfdcqoConfig {
  int iterations = 3;
  int n_shots = 2000;
  // Fraction of lowest-energy shots feeding the bias update; calibration
  // parameter (only 0 < alpha <= 1 is fixed by the scheme).
  double cvar_fraction = 0.1;
  Schedule schedule{};
  CdOptions cd{};
  double hx_value = -1.0;
  std::uint64_t rng_seed = 0;
  // Optional greedy refinement of each iteration's samples (off by default in
  // simulation; on hardware it mitigates readout errors).
  bool greedy_post = false;
  GreedyConfig greedy{};
  // (index, value) entries re-imposed on the bias after every update; used by
  // the branch-and-bound driver to hold branched spins at +-W for the whole
  // run.
  std::vector<std::pair<int, double>> pinned_bias;
};

struct CvarStats {
  BiasField bias;        // per-spin mean over the m lowest-energy shots
  double energy;         // E(alpha): mean energy over those shots
  std::uint64_t shots_used;  // m = ceil(alpha * total shots)
};

// Takes the m lowest-energy shots (records are sorted by energy with
// canonical bitstring order breaking ties, so the cut is deterministic) and
// averages spins and energies over them.
CvarStats cvar_bias_update(const SampleSet& samples, double cvar_fraction);

struct BfdcqoIterationRecord {
  int iteration;
  double best_energy;    // incumbent after this iteration
  double mean_energy;    // sample mean over all shots of the iteration
  double cvar_energy;    // E(alpha) of the iteration
  std::uint64_t evals_total;  // ledger total after this iteration
};

struct BfdcqoResult {
  SpinAssignment best_z;
  double best_energy;
  BiasField final_bias;  // bias after the last update (feeds branching)
  FunctionEvalCounter evals;
  SampleSet all_samples;  // every iteration's shots, merged
  std::vector<BfdcqoIterationRecord> history;
};

// Runs `iterations` rounds from the given starting bias. Randomness: round t
// draws its sampling stream from derive_seed(derive_seed(rng_seed, t), 0) and
// its greedy stream from derive_seed(derive_seed(rng_seed, t), 1).
BfdcqoResult run_bfdcqo(const HuboProblem& problem, const BiasField& initial_bias,
                        const BfdcqoConfig& config);

}  // namespace hubb
