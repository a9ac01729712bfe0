// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubb/bbb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <stdexcept>

#include "hubb/classical.hpp"
#include "hubb/errors.hpp"
#include "hubb/rng.hpp"

namespace hubb {

namespace {

void dump_node(const BranchNode& node, std::string& out) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%d\n", node.depth, node.constrained_index,
                node.constrained_sign, node.best_energy, node.pruned ? 1 : 0);
  out += buf;
  for (const auto& child : node.children) dump_node(child, out);
}

std::vector<std::pair<int, double>> pins_from(const std::vector<BranchConstraint>& constraints,
                                              double w) {
  std::vector<std::pair<int, double>> pins;
  pins.reserve(constraints.size());
  for (const auto& c : constraints) pins.emplace_back(c.index, c.sign * w);
  return pins;
}

}  // namespace

std::string dump_tree(const BranchNode& root) {
  std::string out;
  dump_node(root, out);
  return out;
}

BiasField rescale_for_branch(BiasField bias, const std::vector<BranchConstraint>& constraints,
                             double cap) {
  if (!(cap > 0.0)) throw std::invalid_argument("rescale: cap must be positive");
  std::vector<bool> constrained(bias.hb.size(), false);
  for (const auto& c : constraints) {
    if (c.index < 0 || c.index >= static_cast<int>(bias.hb.size()))
      throw std::invalid_argument("rescale: constraint index out of range");
    constrained[static_cast<std::size_t>(c.index)] = true;
  }
  double max_abs = 0.0;
  for (std::size_t i = 0; i < bias.hb.size(); ++i)
    if (!constrained[i]) max_abs = std::max(max_abs, std::abs(bias.hb[i]));
  if (max_abs > cap) {
    const double factor = cap / max_abs;
    for (std::size_t i = 0; i < bias.hb.size(); ++i)
      if (!constrained[i]) bias.hb[i] *= factor;
  }
  return bias;
}

ApproximateBbbResult approximate_bbb(const HuboProblem& problem, const BbbConfig& config) {
  const int n = problem.n();
  if (config.k < 0 || config.k > n)
    throw std::invalid_argument("bbb: tree depth must lie in [0, n]");
  if (!(config.w > 0.0)) throw std::invalid_argument("bbb: branch magnitude must be positive");
  if (!(config.rescale_cap > 0.0))
    throw std::invalid_argument("bbb: rescale cap must be positive");
  if (config.warm_start && static_cast<int>(config.warm_start->size()) != n)
    throw std::invalid_argument("bbb: warm start size does not match problem");
  const int planned_runs = 2 * config.k + 1;
  if (config.max_bf_runs && planned_runs > *config.max_bf_runs)
    throw CapExceeded("bbb: planned run count exceeds the configured budget");

  BiasField root_bias = BiasField::zero(n);
  if (config.warm_start)
    for (int i = 0; i < n; ++i)
      root_bias.hb[static_cast<std::size_t>(i)] = (*config.warm_start)[static_cast<std::size_t>(i)];

  ApproximateBbbResult result;
  const std::uint64_t seed = config.bf.rng_seed;

  BfdcqoConfig root_cfg = config.bf;
  root_cfg.pinned_bias.clear();
  const auto root_run = run_bfdcqo(problem, root_bias, root_cfg);
  result.evals += root_run.evals;
  result.best_z = root_run.best_z;
  result.best_energy = root_run.best_energy;
  result.bf_runs = 1;

  result.tree.depth = 0;
  result.tree.bias = root_bias;
  result.tree.best_z = root_run.best_z;
  result.tree.best_energy = root_run.best_energy;

  BranchNode* current = &result.tree;
  BiasField bias = root_run.final_bias;
  std::vector<BranchConstraint> constraints;

  for (int layer = 1; layer <= config.k; ++layer) {
    int pick = -1;
    double best_abs = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const bool taken = std::any_of(constraints.begin(), constraints.end(),
                                     [i](const BranchConstraint& c) { return c.index == i; });
      if (taken) continue;
      const double a = std::abs(bias.hb[static_cast<std::size_t>(i)]);
      if (a < best_abs) {  // strict: ties resolve to the lowest index
        best_abs = a;
        pick = i;
      }
    }

    current->children.clear();
    current->children.reserve(2);
    std::vector<BfdcqoResult> runs;
    runs.reserve(2);
    for (const int sign : {+1, -1}) {
      BranchNode node;
      node.depth = layer;
      node.constrained_index = pick;
      node.constrained_sign = sign;
      node.constraints = constraints;
      node.constraints.push_back({pick, sign});
      node.bias = rescale_for_branch(bias, node.constraints, config.rescale_cap);
      node.bias.hb[static_cast<std::size_t>(pick)] = sign * config.w;

      BfdcqoConfig cfg = config.bf;
      cfg.rng_seed = derive_seed(seed, static_cast<std::uint64_t>(
                                           2 * layer - 1 + (sign == 1 ? 0 : 1)));
      cfg.pinned_bias = pins_from(node.constraints, config.w);
      auto run = run_bfdcqo(problem, node.bias, cfg);
      result.evals += run.evals;
      ++result.bf_runs;

      node.best_z = run.best_z;
      node.best_energy = run.best_energy;
      if (run.best_energy < result.best_energy) {
        result.best_energy = run.best_energy;
        result.best_z = run.best_z;
      }
      current->children.push_back(std::move(node));
      runs.push_back(std::move(run));
    }

    // Lower sampled energy survives; exact ties keep the +W child.
    const std::size_t keep =
        current->children[1].best_energy < current->children[0].best_energy ? 1 : 0;
    current->children[1 - keep].pruned = true;
    current = &current->children[keep];
    bias = runs[keep].final_bias;
    constraints = current->constraints;
  }

  return result;
}

RelaxationResult brute_force_relaxation(const HuboProblem& problem,
                                        const std::vector<SpinFix>& fixes) {
  const auto reduced = fix_spins(problem, fixes);
  RelaxationResult out;
  out.z_tilde.assign(static_cast<std::size_t>(problem.n()), 0.0);
  for (const auto& f : fixes) out.z_tilde[static_cast<std::size_t>(f.index)] = f.sign;
  if (reduced.problem.n() == 0) {
    out.lower_bound = reduced.offset;
    return out;
  }
  const auto exact = brute_force(reduced.problem);
  out.lower_bound = exact.energy + reduced.offset;
  for (std::size_t j = 0; j < exact.z.size(); ++j)
    out.z_tilde[static_cast<std::size_t>(reduced.free_to_full[j])] = exact.z[j];
  return out;
}

RelaxationResult trivial_relaxation(const HuboProblem& problem,
                                    const std::vector<SpinFix>& fixes) {
  const auto reduced = fix_spins(problem, fixes);
  double norm1 = 0.0;
  for (const auto& t : reduced.problem.linear()) norm1 += std::abs(t.c);
  for (const auto& t : reduced.problem.quadratic()) norm1 += std::abs(t.c);
  for (const auto& t : reduced.problem.cubic()) norm1 += std::abs(t.c);
  RelaxationResult out;
  out.z_tilde.assign(static_cast<std::size_t>(problem.n()), 0.0);
  for (const auto& f : fixes) out.z_tilde[static_cast<std::size_t>(f.index)] = f.sign;
  out.lower_bound = reduced.offset - norm1;
  return out;
}

namespace {

struct ExactNode {
  double lower_bound;
  std::uint64_t creation_index;
  std::vector<SpinFix> fixes;
  std::vector<double> z_tilde;
};

struct ExactNodeOrder {
  bool operator()(const ExactNode& a, const ExactNode& b) const {
    if (a.lower_bound != b.lower_bound) return a.lower_bound > b.lower_bound;
    return a.creation_index > b.creation_index;  // FIFO among equal bounds
  }
};

}  // namespace

ExactBbbResult exact_bbb(const HuboProblem& problem, const RelaxationOracle& oracle,
                         const BfdcqoConfig& bf_config) {
  const int n = problem.n();
  std::priority_queue<ExactNode, std::vector<ExactNode>, ExactNodeOrder> frontier;

  std::uint64_t next_index = 0;
  const auto check_relaxation = [&](const RelaxationResult& r) {
    if (static_cast<int>(r.z_tilde.size()) != n)
      throw std::invalid_argument("exact_bbb: oracle returned a wrong-size solution");
  };

  {
    auto root = oracle(problem, {});
    check_relaxation(root);
    frontier.push({root.lower_bound, next_index++, {}, std::move(root.z_tilde)});
  }

  ExactBbbResult result;
  result.best_energy = std::numeric_limits<double>::infinity();
  result.node_count = 0;

  // Incumbents are scored on the original problem, not via reduced energy plus
  // offset: folding drifts by ulps, and the reported optimum must match
  // energy() bit for bit.
  const auto admit = [&](const SpinAssignment& z) {
    const double e = problem.energy(z);
    if (e < result.best_energy) {
      result.best_energy = e;
      result.best_z = z;
    }
  };

  while (!frontier.empty()) {
    const ExactNode node = frontier.top();
    frontier.pop();
    if (node.lower_bound >= result.best_energy) continue;  // bound raced the queue
    ++result.node_count;

    // Rounding the relaxation gives a valid incumbent; with an exact oracle the
    // root rounding is already the optimum.
    SpinAssignment rounded(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      rounded[static_cast<std::size_t>(i)] =
          node.z_tilde[static_cast<std::size_t>(i)] < 0.0 ? int8_t{-1} : int8_t{1};
    admit(rounded);

    const auto reduced = fix_spins(problem, node.fixes);
    const int n_free = reduced.problem.n();

    SpinAssignment candidate(static_cast<std::size_t>(n), int8_t{1});
    for (const auto& f : node.fixes)
      candidate[static_cast<std::size_t>(f.index)] = static_cast<int8_t>(f.sign);
    if (n_free > 0) {
      BfdcqoConfig cfg = bf_config;
      cfg.rng_seed = derive_seed(bf_config.rng_seed, node.creation_index);
      BiasField bias;
      bias.hb.reserve(static_cast<std::size_t>(n_free));
      for (int j = 0; j < n_free; ++j)
        bias.hb.push_back(node.z_tilde[static_cast<std::size_t>(reduced.free_to_full[static_cast<std::size_t>(j)])]);
      const auto run = run_bfdcqo(reduced.problem, bias, cfg);
      result.evals += run.evals;
      for (int j = 0; j < n_free; ++j)
        candidate[static_cast<std::size_t>(reduced.free_to_full[static_cast<std::size_t>(j)])] =
            run.best_z[static_cast<std::size_t>(j)];
    }
    admit(candidate);

    if (n_free == 0 || node.lower_bound >= result.best_energy) continue;

    // Most fractional free spin, lowest index on ties.
    int pick = -1;
    double best_abs = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_free; ++j) {
      const int full = reduced.free_to_full[static_cast<std::size_t>(j)];
      const double a = std::abs(node.z_tilde[static_cast<std::size_t>(full)]);
      if (a < best_abs) {
        best_abs = a;
        pick = full;
      }
    }

    for (const int sign : {+1, -1}) {
      auto child_fixes = node.fixes;
      child_fixes.push_back({pick, sign});
      auto relax = oracle(problem, child_fixes);
      check_relaxation(relax);
      if (relax.lower_bound >= result.best_energy) continue;  // prune at creation
      frontier.push({relax.lower_bound, next_index++, std::move(child_fixes),
                     std::move(relax.z_tilde)});
    }
  }

  return result;
}

}  // namespace hubb
