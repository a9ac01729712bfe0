// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Backend of the hubb command-line tool: option bundles, solver dispatch,
// result records, planned-budget accounting and atomic output emission.
#ifndef HUBB_TOOLS_HARNESS_HPP_
#define HUBB_TOOLS_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hubb/hubo.hpp"
#include "hubb/ledger.hpp"
#include "json.hpp"

namespace hubb::cli {

struct GenerateOptions {
  int n = 0;
  std::string topology = "sparse-chain";  // sparse-chain | dense
  int n2 = 0;                             // dense only: pair term count
  int n3 = 0;                             // dense only: triple term count
  double coeff_low = -1.0;
  double coeff_high = 1.0;
  std::uint64_t seed = 0;
};

// Every tunable the `solve` subcommand exposes, in one bundle. Each solver
// reads only its own slice; flags supplied for the wrong solver are rejected
// up front so a typo cannot be silently ignored.
struct SolveOptions {
  std::string solver;  // sa | greedy | bfdcqo | bbb | exact-bbb | brute
  // sa
  int sweeps = 200;
  int reads = 100;
  std::optional<double> t_initial;
  std::optional<double> t_final;
  // greedy: independent descents from random starts, best kept
  int restarts = 100;
  int descent_sweeps = 15;
  // bfdcqo family (also the per-node loop of bbb / exact-bbb)
  int iterations = 3;
  int shots = 2000;
  double cvar_fraction = 0.1;
  double hx = -1.0;
  double total_time = 1.0;
  int quadrature_nodes = 129;
  bool greedy_post = false;
  // bbb
  int k = 3;
  double w = 2.0;
  double rescale_cap = 3.0;
  std::optional<int> max_bf_runs;
  std::string warm_start = "none";  // none | sa
  int warm_sweeps = 500;
  int warm_reads = 100;
  // exact-bbb
  std::string oracle = "brute";  // brute | trivial
};

// Seed stream for the optional warm-start run, far above the child-branch
// streams consumed inside the tree (at most 2K).
inline constexpr std::uint64_t kWarmStartStream = std::uint64_t{1} << 32;

// True when `key` (a flag name without the leading dashes) is meaningful for
// `solver`. Shared by the solve-flag check and the bench spec parser.
bool key_allowed(const std::string& solver, const std::string& key);

struct SolverOutcome {
  SpinAssignment best_z;
  double best_energy = 0.0;
  FunctionEvalCounter evals;
  nlohmann::json config;                    // effective settings echo
  std::optional<std::string> tree;          // bbb: explored-tree dump
  std::optional<std::uint64_t> node_count;  // exact-bbb: nodes processed
};

SolverOutcome run_solver(const HuboProblem& problem, const SolveOptions& options,
                         std::uint64_t seed);

// Evaluation budget implied by the options alone. Empty for brute, greedy and
// exact-bbb, whose cost is data dependent.
std::optional<std::uint64_t> planned_evals(const SolveOptions& options, int n);

// name[:key=value,...] with keys named after the solve flags, e.g.
// "sa:sweeps=1000,reads=100" or "bbb:K=3,W=2,shots=2000".
SolveOptions parse_solver_spec(const std::string& text);

nlohmann::json record_json(const SolverOutcome& outcome, const SolveOptions& options,
                           std::uint64_t seed, const std::string& instance_path,
                           const HuboProblem& problem);
// Scalar fields only; the bbb tree dump is carried by the JSON form.
std::string record_csv(const SolverOutcome& outcome, const SolveOptions& options,
                       std::uint64_t seed, const HuboProblem& problem);

struct BenchOptions {
  std::vector<std::string> instances;
  std::string solver_a;
  std::string solver_b;
  std::uint64_t seed = 0;
  bool allow_uneven = false;
  std::vector<double> ref_energies;  // empty: brute-force reference per instance
  std::string format = "csv";        // csv | json
};

// Runs both solvers on every instance (instances in parallel, order-stable
// output) and renders the comparison table in the requested format.
std::string run_bench(const BenchOptions& options);

// Shortest round-trip decimal form ("%.17g"), used for every number printed.
std::string fmt_double(double value);
std::string spins_to_string(const SpinAssignment& z);

std::string read_file(const std::string& path);  // invalid_argument if unreadable

// Writes via a temp file + rename so readers never observe a partial file;
// an empty path prints to stdout.
void emit_output(const std::string& text, const std::string& path);

}  // namespace hubb::cli

#endif  // HUBB_TOOLS_HARNESS_HPP_
