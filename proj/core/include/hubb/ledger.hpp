// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Cross-solver cost accounting. One function evaluation = one energy
// measurement: a quantum shot, an SA spin-flip proposal, or a greedy-search
// delta-energy evaluation. Budget-matched comparisons equalize total().

#pragma once

#include <cstdint>

namespace hubb {

struct FunctionEvalCounter {
  std::uint64_t quantum_shots = 0;
  std::uint64_t sa_flips = 0;
  std::uint64_t greedy_flips = 0;

  std::uint64_t total() const { return quantum_shots + sa_flips + greedy_flips; }

  FunctionEvalCounter& operator+=(const FunctionEvalCounter& other) {
    quantum_shots += other.quantum_shots;
    sa_flips += other.sa_flips;
    greedy_flips += other.greedy_flips;
    return *this;
  }
  friend FunctionEvalCounter operator+(FunctionEvalCounter a, const FunctionEvalCounter& b) {
    return a += b;
  }
  friend bool operator==(const FunctionEvalCounter&, const FunctionEvalCounter&) = default;
};

template <typename... Counters>
FunctionEvalCounter ledger_merge(const Counters&... counters) {
  FunctionEvalCounter out;
  (out += ... += counters);
  return out;
}

// Planned budgets, exact integer arithmetic (usable without running anything).
constexpr std::uint64_t planned_bfdcqo_shots(int iterations, int n_shots) {
  return static_cast<std::uint64_t>(iterations) * static_cast<std::uint64_t>(n_shots);
}
// The approximate branch-and-bound tree runs the bias-field loop 2K+1 times.
constexpr std::uint64_t planned_bbb_shots(int k, int iterations, int n_shots) {
  return static_cast<std::uint64_t>(2 * k + 1) * planned_bfdcqo_shots(iterations, n_shots);
}
// One sweep proposes n single-spin flips; each proposal costs one evaluation.
constexpr std::uint64_t planned_sa_flips(int n, int sweeps, int reads) {
  return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(sweeps) *
         static_cast<std::uint64_t>(reads);
}

}  // namespace hubb
