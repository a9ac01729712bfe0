// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Sparse representation of a classical spin Hamiltonian with one-, two- and
// three-body terms over s_i in {-1,+1}:
//
//   E(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j + sum_{i<j<k} K_ijk s_i s_j s_k
//
// plus seeded instance generation, JSON (de)serialization, incremental
// single-flip energy evaluation, and spin fixing (variable elimination).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hubb {

// Spin assignment; entries are +1 or -1. The basis-state convention used
// throughout the toolkit: bit b=0 of a computational basis index maps to
// spin +1, bit b=1 to spin -1, and spin i occupies the i-th lowest bit.
using SpinAssignment = std::vector<std::int8_t>;

SpinAssignment spins_from_index(std::uint64_t index, int n);
std::uint64_t spin_to_index(const SpinAssignment& z);  // requires n <= 64

// Canonical bitstring order: ascending basis-state index, generalized to any
// length. Used as the deterministic tie-break everywhere energies collide.
bool spin_less(const SpinAssignment& a, const SpinAssignment& b);

struct LinearTerm {
  int i;
  double c;
  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};
struct PairTerm {
  int i, j;
  double c;
  friend bool operator==(const PairTerm&, const PairTerm&) = default;
};
struct TripleTerm {
  int i, j, k;
  double c;
  friend bool operator==(const TripleTerm&, const TripleTerm&) = default;
};

struct EnergyByOrder {
  double linear = 0.0;
  double quadratic = 0.0;
  double cubic = 0.0;
  double total() const { return linear + quadratic + cubic; }
};

class HuboProblem {
 public:
  HuboProblem() = default;

  // Terms must be canonical: indices in [0,n), strictly increasing within
  // each term, no duplicate keys. Zero coefficients are dropped (canonical
  // sparse form). Throws std::invalid_argument on violations.
  HuboProblem(int n, std::vector<LinearTerm> linear, std::vector<PairTerm> quadratic,
              std::vector<TripleTerm> cubic);

  int n() const { return n_; }
  const std::vector<LinearTerm>& linear() const { return linear_; }
  const std::vector<PairTerm>& quadratic() const { return quadratic_; }
  const std::vector<TripleTerm>& cubic() const { return cubic_; }
  std::size_t term_count() const { return linear_.size() + quadratic_.size() + cubic_.size(); }

  // Dense view of the one-body field (zeros where absent).
  const std::vector<double>& field() const { return field_; }

  double energy(const SpinAssignment& z) const;

  // Per-order decomposition; energy(z) == energy_by_order(z).total().
  EnergyByOrder energy_by_order(const SpinAssignment& z) const;

  // Energy change from flipping spin i in z, evaluated in O(degree(i)):
  // delta = E(z with s_i flipped) - E(z) = -2 s_i * (sum of terms touching i).
  double delta_energy(const SpinAssignment& z, int i) const;

  double max_abs_coefficient() const;

  friend bool operator==(const HuboProblem& a, const HuboProblem& b) {
    return a.n_ == b.n_ && a.linear_ == b.linear_ && a.quadratic_ == b.quadratic_ &&
           a.cubic_ == b.cubic_;
  }

 private:
  void check_assignment(const SpinAssignment& z) const;

  int n_ = 0;
  std::vector<LinearTerm> linear_;
  std::vector<PairTerm> quadratic_;
  std::vector<TripleTerm> cubic_;
  std::vector<double> field_;              // dense h_i
  std::vector<std::vector<int>> pair_adj_;    // spin -> indices into quadratic_
  std::vector<std::vector<int>> triple_adj_;  // spin -> indices into cubic_
};

// ---------------------------------------------------------------------------
// Instance generation

enum class Topology { kSparseChain, kDenseRandom };

struct InstanceSpec {
  int n = 0;
  Topology topology = Topology::kSparseChain;
  // Dense topology only: number of distinct two-/three-body terms, drawn
  // uniformly without replacement.
  int n2 = 0;
  int n3 = 0;
  // Coefficients are i.i.d. uniform on [coeff_low, coeff_high); exact zeros
  // are redrawn so the emitted term counts are exact.
  double coeff_low = -1.0;
  double coeff_high = 1.0;
  std::uint64_t seed = 0;
};

// Deterministic for a fixed spec. Sparse chain: n one-body terms, n-1 pair
// terms (i,i+1), n-2 triple terms (i,i+1,i+2). Dense: n one-body terms plus
// the requested counts.
HuboProblem generate(const InstanceSpec& spec);

// ---------------------------------------------------------------------------
// Serialization

struct InstanceMetadata {
  std::optional<std::uint64_t> seed;
  std::string topology;      // optional provenance, e.g. "sparse-chain"
  std::string distribution;  // e.g. "uniform[-1,1)"
};

// JSON document with keys n, linear [[i,c]...], quadratic [[i,j,c]...],
// cubic [[i,j,k,c]...] and optional provenance metadata.
std::string serialize(const HuboProblem& problem, const InstanceMetadata& meta = {});

struct ParsedInstance {
  HuboProblem problem;
  InstanceMetadata meta;
};

// Inverse of serialize. Entries with permuted indices are canonicalized and
// merged by summation; an exactly repeated key is a parse error, as is any
// index out of range or repeated within one term.
ParsedInstance parse_instance(std::string_view text);

// ---------------------------------------------------------------------------
// Spin fixing (variable elimination)

struct SpinFix {
  int index;
  int sign;  // +1 or -1
};

struct ReducedProblem {
  HuboProblem problem;            // over the free spins, renumbered
  double offset = 0.0;            // energy of the eliminated part
  std::vector<int> free_to_full;  // reduced index -> original index
};

// Substitutes the fixed spins and returns the induced subproblem. For any z
// consistent with the fixes: energy(z) == reduced.energy(z_free) + offset.
ReducedProblem fix_spins(const HuboProblem& problem, const std::vector<SpinFix>& fixes);

// ---------------------------------------------------------------------------
// Measurement outcomes

struct SampleRecord {
  SpinAssignment z;
  double energy;  // always equals problem.energy(z) exactly
  std::uint64_t count;
};

// Aggregated shots, records sorted ascending by (energy, canonical bitstring
// order), duplicate assignments merged.
struct SampleSet {
  std::vector<SampleRecord> records;
  std::uint64_t total_shots = 0;

  static SampleSet from_counts(const HuboProblem& problem,
                               std::vector<std::pair<SpinAssignment, std::uint64_t>> counts);

  const SampleRecord& best() const;
  double mean_energy() const;
};

}  // namespace hubb
