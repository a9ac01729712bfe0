// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Counter-based pseudo-random utilities. Every stochastic component in the
// toolkit (instance generation, shot sampling, annealing schedules, shuffles)
// draws from one user-supplied seed through derive_seed() chains, so any
// sub-computation can be replayed in isolation and results are bit-identical
// across platforms and thread counts. We deliberately avoid <random>
// distributions, whose output is implementation-defined.

#pragma once

#include <cstdint>
#include <vector>

namespace hubb {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer: full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from (seed, stream). Used to hand each
// read/iteration/node its own generator without sequencing constraints.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ull));
}

// Counter-based generator: output k depends only on (seed, k), never on call
// order of other instances.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next_u64() noexcept { return mix64(seed_ + kGoldenGamma * ++counter_); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound). Multiply-shift reduction; bias < 2^-64 per draw,
  // negligible at the draw counts used here and fully deterministic.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace hubb
