// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// HUBO -> QUBO reduction. Spins map to binaries via s = 1 - 2x, each cubic
// binary monomial is linearized by substituting one product x_i x_j with an
// auxiliary variable y, and the substitution is enforced with the standard
// product penalty M * (x_i x_j - 2 x_i y - 2 x_j y + 3 y), which is zero
// exactly when y == x_i x_j and a positive integer multiple of M otherwise.
// The constant offset of the expansion is kept inside the QUBO so objective
// values stay directly comparable to HUBO energies.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hubb/hubo.hpp"

namespace hubb {

// Binary assignment; entries are 0 or 1. Variable i occupies the i-th lowest
// bit of a basis index, matching the spin convention (bit 0 <-> spin +1).
using BitAssignment = std::vector<std::uint8_t>;

BitAssignment bits_from_index(std::uint64_t index, int m);

// Projection between the two variable domains: s = 1 - 2x.
SpinAssignment spins_from_bits(const BitAssignment& x);
BitAssignment bits_from_spins(const SpinAssignment& z);

class QuboProblem {
 public:
  QuboProblem() = default;

  // Terms must be canonical: indices in [0,m), i < j in pair terms, no
  // duplicate keys. Zero coefficients are dropped. Throws
  // std::invalid_argument on violations.
  QuboProblem(int m, std::vector<LinearTerm> linear, std::vector<PairTerm> quadratic,
              double offset);

  int m() const { return m_; }
  const std::vector<LinearTerm>& linear() const { return linear_; }
  const std::vector<PairTerm>& quadratic() const { return quadratic_; }
  double offset() const { return offset_; }

  // Includes the offset, so consistent assignments score HUBO energies.
  double energy(const BitAssignment& x) const;

  friend bool operator==(const QuboProblem& a, const QuboProblem& b) {
    return a.m_ == b.m_ && a.offset_ == b.offset_ && a.linear_ == b.linear_ &&
           a.quadratic_ == b.quadratic_;
  }

 private:
  int m_ = 0;
  std::vector<LinearTerm> linear_;
  std::vector<PairTerm> quadratic_;
  double offset_ = 0.0;
};

struct AuxVariable {
  int aux;   // auxiliary variable index (>= original n)
  int i, j;  // original pair it represents: y_aux == x_i * x_j
  friend bool operator==(const AuxVariable&, const AuxVariable&) = default;
};

struct ReductionMap {
  std::vector<AuxVariable> aux;  // ordered by aux index: n, n+1, ...
  double penalty = 0.0;          // M
  friend bool operator==(const ReductionMap&, const ReductionMap&) = default;
};

// Builds the penalized QUBO. Auxiliary pairs are chosen greedily: the pair
// occurring in the most not-yet-linearized cubic monomials is substituted
// first (lexicographically smallest pair on ties), so cubes sharing a pair
// share one auxiliary. Deterministic for a fixed problem.
std::pair<QuboProblem, ReductionMap> hubo_to_qubo(const HuboProblem& problem, double penalty);

struct ReductionReport {
  bool minima_match = false;          // min QUBO == min HUBO (offset folded in)
  bool minimizers_consistent = false; // every QUBO minimizer has y == x_i x_j throughout
  bool projections_optimal = false;   // first-n-bits of every QUBO minimizer minimizes the HUBO
  double hubo_minimum = 0.0;
  double qubo_minimum = 0.0;
  // Smallest penalty for which all three checks pass, located by bisection
  // on a base + M * violations decomposition of the QUBO energy; 0 when the
  // reduction has no auxiliaries.
  double minimal_penalty = 0.0;
  bool pass() const { return minima_match && minimizers_consistent && projections_optimal; }
};

// Exhaustive equivalence check of a reduction artifact against its source
// problem. Requires problem.n() <= 14 and qubo.m() <= 22 (CapExceeded
// otherwise); throws std::invalid_argument when the map does not describe
// the given QUBO's auxiliary block.
ReductionReport verify_reduction(const HuboProblem& problem, const QuboProblem& qubo,
                                 const ReductionMap& map);

// JSON document with keys m, linear [[i,c]...], quadratic [[i,j,c]...],
// offset, and a reduction block {penalty, aux [[y,i,j]...]}; the quadratic
// analog of the HUBO instance schema (no cubic key).
std::string serialize_qubo(const QuboProblem& qubo, const ReductionMap& map);

struct ParsedQubo {
  QuboProblem qubo;
  ReductionMap map;
};

// Inverse of serialize_qubo; throws std::invalid_argument on malformed text.
ParsedQubo parse_qubo(std::string_view text);

}  // namespace hubb
