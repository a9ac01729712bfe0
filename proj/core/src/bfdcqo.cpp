// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubb/bfdcqo.hpp"

#include <cmath>
#include <stdexcept>

#include "hubb/rng.hpp"
#include "hubb/statevector.hpp"

namespace hubb {

CvarStats cvar_bias_update(const SampleSet& samples, double cvar_fraction) {
  if (samples.records.empty() || samples.total_shots == 0)
    throw std::invalid_argument("cvar: empty sample set");
  if (!(cvar_fraction > 0.0 && cvar_fraction <= 1.0))
    throw std::invalid_argument("cvar: fraction must lie in (0, 1]");
  const std::uint64_t m = static_cast<std::uint64_t>(
      std::ceil(cvar_fraction * static_cast<double>(samples.total_shots)));

  const std::size_t n = samples.records.front().z.size();
  std::vector<double> sums(n, 0.0);
  double energy_sum = 0.0;
  std::uint64_t taken = 0;
  for (const auto& rec : samples.records) {
    if (taken >= m) break;
    const std::uint64_t use = std::min(rec.count, m - taken);
    for (std::size_t i = 0; i < n; ++i) sums[i] += static_cast<double>(use) * rec.z[i];
    energy_sum += static_cast<double>(use) * rec.energy;
    taken += use;
  }
  for (auto& s : sums) s /= static_cast<double>(m);
  return {BiasField{std::move(sums)}, energy_sum / static_cast<double>(m), m};
}

BfdcqoResult run_bfdcqo(const HuboProblem& problem, const BiasField& initial_bias,
                        const BfdcqoConfig& config) {
  const int n = problem.n();
  if (static_cast<int>(initial_bias.hb.size()) != n)
    throw std::invalid_argument("bfdcqo: bias length does not match problem size");
  if (config.iterations < 1 || config.n_shots < 1)
    throw std::invalid_argument("bfdcqo: iterations and n_shots must be positive");
  if (!(config.cvar_fraction > 0.0 && config.cvar_fraction <= 1.0))
    throw std::invalid_argument("bfdcqo: cvar_fraction must lie in (0, 1]");
  for (const auto& [index, value] : config.pinned_bias) {
    (void)value;
    if (index < 0 || index >= n) throw std::invalid_argument("bfdcqo: pinned index out of range");
  }

  const auto impose_pins = [&](BiasField& bias) {
    for (const auto& [index, value] : config.pinned_bias)
      bias.hb[static_cast<std::size_t>(index)] = value;
  };

  BfdcqoResult result;
  result.final_bias = initial_bias;
  impose_pins(result.final_bias);
  result.best_energy = 0.0;
  bool have_incumbent = false;

  DriverConfig driver = DriverConfig::uniform(n, config.hx_value);

  std::vector<std::pair<SpinAssignment, std::uint64_t>> merged;
  for (int t = 0; t < config.iterations; ++t) {
    driver.hb = result.final_bias.hb;
    const auto circuit = build_cd_circuit(problem, driver, config.schedule, config.cd);
    const auto psi = simulate_circuit(circuit);

    const std::uint64_t round_seed = derive_seed(config.rng_seed, static_cast<std::uint64_t>(t));
    Rng sample_rng(derive_seed(round_seed, 0));
    SampleSet samples = psi.sample(problem, config.n_shots, sample_rng);
    result.evals.quantum_shots += static_cast<std::uint64_t>(config.n_shots);

    if (config.greedy_post) {
      GreedyConfig greedy = config.greedy;
      greedy.rng_seed = derive_seed(round_seed, 1);
      auto [refined, flips] = greedy_post_process(problem, samples, greedy);
      samples = std::move(refined);
      result.evals.greedy_flips += flips;
    }

    const auto& best = samples.best();
    if (!have_incumbent || best.energy < result.best_energy) {
      result.best_energy = best.energy;
      result.best_z = best.z;
      have_incumbent = true;
    }

    auto stats = cvar_bias_update(samples, config.cvar_fraction);
    result.final_bias = std::move(stats.bias);
    impose_pins(result.final_bias);

    result.history.push_back({t, result.best_energy, samples.mean_energy(), stats.energy,
                              result.evals.total()});
    for (const auto& rec : samples.records) merged.emplace_back(rec.z, rec.count);
  }

  result.all_samples = SampleSet::from_counts(problem, std::move(merged));
  return result;
}

}  // namespace hubb
