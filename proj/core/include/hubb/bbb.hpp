// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Branch-and-bound drivers over bias fields.
//
// Approximate mode grows a depth-K binary tree: each layer branches the most
// uncertain spin (smallest |h^b|) into +-W bias constraints, runs the
// bias-field loop on both children, keeps the lower-energy child and prunes
// its sibling, for exactly 2K+1 bias-field executions. Constraints live
// purely in the bias field; the problem itself is never reduced.
//
// Exact mode is classic best-first branch-and-bound with a pluggable
// relaxation: nodes carry hard spin fixes (substituted out of the problem),
// are ordered by relaxation lower bound, pruned when the bound reaches the
// incumbent, and branched on the most fractional relaxed spin. With an
// admissible relaxation the result is the certified optimum.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hubb/bfdcqo.hpp"
#include "hubb/hubo.hpp"
#include "hubb/ledger.hpp"

namespace hubb {

struct BranchConstraint {
  int index;
  int sign;  // +1 or -1: the branched spin's bias is held at sign * W
};

struct BranchNode {
  int depth = 0;
  int constrained_index = -1;  // index constrained at this node (-1: root)
  int constrained_sign = 0;
  std::vector<BranchConstraint> constraints;  // full set active at this node
  BiasField bias;                             // bias this node's run started from
  SpinAssignment best_z;
  double best_energy = 0.0;
  bool pruned = false;
  std::vector<BranchNode> children;  // at most 2
};

// One line per node, preorder: "depth,constrained_index,sign,best_energy,pruned".
std::string dump_tree(const BranchNode& root);

struct BbbConfig {
  int k = 3;                // tree depth
  double w = 2.0;           // branch bias magnitude
  double rescale_cap = 3.0; // clamp for unconstrained bias entries at branching
  BfdcqoConfig bf;
  std::optional<SpinAssignment> warm_start;  // injected raw as +-1 root biases
  std::optional<int> max_bf_runs;            // refuse plans exceeding this budget
};

// Unconstrained entries are scaled by cap/max|h^b_j| when the largest
// magnitude exceeds the cap; constrained entries are left untouched.
BiasField rescale_for_branch(BiasField bias, const std::vector<BranchConstraint>& constraints,
                             double cap);

struct ApproximateBbbResult {
  SpinAssignment best_z;
  double best_energy;
  BranchNode tree;
  FunctionEvalCounter evals;
  int bf_runs;  // always 2K+1
};

// Randomness: the root run uses config.bf.rng_seed verbatim (so k = 0
// reproduces a plain bias-field run record-for-record); the layer-l children
// use derive_seed(seed, 2l-1) for the +W child and derive_seed(seed, 2l) for
// the -W child.
ApproximateBbbResult approximate_bbb(const HuboProblem& problem, const BbbConfig& config);

// Relaxation contract: given the problem and the fixes active at a node,
// return a continuous solution z_tilde in [-1,1]^n (fixed entries at their
// fixed signs) and an admissible lower bound on the constrained minimum.
struct RelaxationResult {
  std::vector<double> z_tilde;
  double lower_bound;
};
using RelaxationOracle =
    std::function<RelaxationResult(const HuboProblem&, const std::vector<SpinFix>&)>;

// Tight oracle: exhaustively solves the free-spin subproblem (bound equals
// the constrained minimum).
RelaxationResult brute_force_relaxation(const HuboProblem& problem,
                                        const std::vector<SpinFix>& fixes);

// Weak oracle: offset of the fixed part minus the coefficient 1-norm of the
// remaining terms; carries no branching information (free entries 0).
RelaxationResult trivial_relaxation(const HuboProblem& problem,
                                    const std::vector<SpinFix>& fixes);

struct ExactBbbResult {
  SpinAssignment best_z;
  double best_energy;
  std::uint64_t node_count;  // nodes popped and processed
  FunctionEvalCounter evals;
};

// Each processed node runs the bias-field loop on the reduced subproblem,
// seeded with the relaxed solution as its starting bias
// (rng_seed = derive_seed(bf_config.rng_seed, creation_index)).
ExactBbbResult exact_bbb(const HuboProblem& problem, const RelaxationOracle& oracle,
                         const BfdcqoConfig& bf_config);

}  // namespace hubb
