// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubb/classical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hubb/errors.hpp"
#include "hubb/rng.hpp"

namespace hubb {

namespace {

SpinAssignment random_assignment(int n, Rng& rng) {
  SpinAssignment z(static_cast<std::size_t>(n));
  for (auto& s : z) s = rng.next_below(2) ? int8_t{1} : int8_t{-1};
  return z;
}

// max |delta E| over random single-flip probes; temperature scale of the
// instance. Falls back to 1 for coupling-free problems.
double probe_temperature(const HuboProblem& problem, Rng& rng) {
  double best = 0.0;
  for (int k = 0; k < 1000; ++k) {
    SpinAssignment z = random_assignment(problem.n(), rng);
    const int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(problem.n())));
    best = std::max(best, std::abs(problem.delta_energy(z, i)));
  }
  return best > 0.0 ? best : 1.0;
}

}  // namespace

double sa_cooling_ratio(double t_initial, double t_final, int sweeps) {
  if (!(t_initial > 0.0) || !(t_final > 0.0) || t_initial < t_final)
    throw std::invalid_argument("sa: need t_initial >= t_final > 0");
  if (sweeps <= 1) return 1.0;
  return std::pow(t_final / t_initial, 1.0 / (sweeps - 1));
}

bool sa_accept(double delta, double temperature, double u) {
  if (delta <= 0.0) return true;
  return u < std::exp(-delta / temperature);
}

std::pair<SampleSet, FunctionEvalCounter> simulated_annealing(const HuboProblem& problem,
                                                              const SaConfig& config) {
  if (config.sweeps < 1 || config.reads < 1)
    throw std::invalid_argument("sa: sweeps and reads must be positive");
  const int n = problem.n();

  double t_initial = 0.0;
  if (config.t_initial) {
    t_initial = *config.t_initial;
  } else {
    Rng probe_rng(derive_seed(config.rng_seed, 0));
    t_initial = probe_temperature(problem, probe_rng);
  }
  const double t_final = config.t_final.value_or(1e-3 * t_initial);
  const double ratio = sa_cooling_ratio(t_initial, t_final, config.sweeps);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  std::vector<std::pair<SpinAssignment, std::uint64_t>> finals;
  finals.reserve(static_cast<std::size_t>(config.reads));
  for (int read = 0; read < config.reads; ++read) {
    Rng rng(derive_seed(config.rng_seed, static_cast<std::uint64_t>(read) + 1));
    SpinAssignment z = random_assignment(n, rng);
    double temperature = t_initial;
    for (int sweep = 0; sweep < config.sweeps; ++sweep, temperature *= ratio) {
      rng.shuffle(order);
      for (const int i : order) {
        const double delta = problem.delta_energy(z, i);
        if (sa_accept(delta, temperature, rng.next_double()))
          z[static_cast<std::size_t>(i)] = static_cast<int8_t>(-z[static_cast<std::size_t>(i)]);
      }
    }
    finals.emplace_back(std::move(z), 1);
  }

  FunctionEvalCounter evals;
  evals.sa_flips = planned_sa_flips(n, config.sweeps, config.reads);
  return {SampleSet::from_counts(problem, std::move(finals)), evals};
}

SpinAssignment greedy_local_search(const HuboProblem& problem, SpinAssignment z,
                                   const GreedyConfig& config, std::uint64_t* delta_evals) {
  if (config.sweeps < 1) throw std::invalid_argument("greedy: sweeps must be positive");
  if (static_cast<int>(z.size()) != problem.n())
    throw std::invalid_argument("greedy: assignment size does not match problem");
  Rng rng(derive_seed(config.rng_seed, 0));
  std::vector<int> order(z.size());
  std::iota(order.begin(), order.end(), 0);
  for (int sweep = 0; sweep < config.sweeps; ++sweep) {
    rng.shuffle(order);
    bool flipped = false;
    for (const int i : order) {
      const double delta = problem.delta_energy(z, i);
      if (delta_evals) ++*delta_evals;
      if (delta < 0.0) {  // strict: no sideways moves
        z[static_cast<std::size_t>(i)] = static_cast<int8_t>(-z[static_cast<std::size_t>(i)]);
        flipped = true;
      }
    }
    if (!flipped) break;
  }
  return z;
}

std::pair<SampleSet, std::uint64_t> greedy_post_process(const HuboProblem& problem,
                                                        const SampleSet& samples,
                                                        const GreedyConfig& config) {
  if (samples.records.empty()) throw std::invalid_argument("greedy: empty sample set");
  const std::size_t refine =
      std::min(samples.records.size(), static_cast<std::size_t>(config.top_k));
  std::uint64_t flips = 0;
  std::vector<std::pair<SpinAssignment, std::uint64_t>> rebuilt;
  rebuilt.reserve(samples.records.size());
  for (std::size_t r = 0; r < samples.records.size(); ++r) {
    const auto& rec = samples.records[r];
    if (r < refine) {
      GreedyConfig per_record = config;
      per_record.rng_seed = derive_seed(config.rng_seed, r);
      rebuilt.emplace_back(greedy_local_search(problem, rec.z, per_record, &flips), rec.count);
    } else {
      rebuilt.emplace_back(rec.z, rec.count);
    }
  }
  return {SampleSet::from_counts(problem, std::move(rebuilt)), flips};
}

BruteForceResult brute_force(const HuboProblem& problem) {
  const int n = problem.n();
  if (n > 24) throw CapExceeded("brute_force: n exceeds cap 24");
  SpinAssignment z(static_cast<std::size_t>(n), int8_t{1});  // basis index 0
  double energy = problem.energy(z);
  std::uint64_t best_index = 0;
  double best_energy = energy;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int bit = std::countr_zero(k);
    energy += problem.delta_energy(z, bit);
    z[static_cast<std::size_t>(bit)] = static_cast<int8_t>(-z[static_cast<std::size_t>(bit)]);
    if ((k & 0xfff) == 0) energy = problem.energy(z);  // periodic drift resync
    const std::uint64_t index = k ^ (k >> 1);  // Gray position being visited
    if (energy < best_energy || (energy == best_energy && index < best_index)) {
      energy = problem.energy(z);  // record exact values only
      if (energy < best_energy || (energy == best_energy && index < best_index)) {
        best_energy = energy;
        best_index = index;
      }
    }
  }
  return {spins_from_index(best_index, n), best_energy};
}

std::vector<double> brute_force_spectrum(const HuboProblem& problem) {
  const int n = problem.n();
  if (n > 24) throw CapExceeded("brute_force_spectrum: n exceeds cap 24");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> spectrum(total);
  for (std::uint64_t b = 0; b < total; ++b) spectrum[b] = problem.energy(spins_from_index(b, n));
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

}  // namespace hubb
