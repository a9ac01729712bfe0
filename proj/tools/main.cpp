// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// hubb command-line tool. Subcommands: generate, solve, bench, quadratize,
// verify-reduction. Exit codes: 0 success, 2 bad input, 3 solver cap exceeded.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "harness.hpp"
#include "hubb/errors.hpp"
#include "hubb/hubo.hpp"
#include "hubb/quadratize.hpp"
#include "json.hpp"

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitCapExceeded = 3;

using hubb::cli::BenchOptions;
using hubb::cli::GenerateOptions;
using hubb::cli::SolveOptions;
using nlohmann::json;

struct SolveCmd {
  SolveOptions options;
  std::string instance;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

struct QuadratizeCmd {
  std::string instance;
  std::optional<double> penalty;
  double penalty_factor = 10.0;
  std::string out;
};

struct VerifyCmd {
  std::string instance;
  std::string qubo;
  std::string out;
  std::string format = "json";
};

// Flag -> spec-parameter key; used to reject flags that were supplied for a
// solver they do not apply to.
const std::map<std::string, std::string> kSolverFlagKeys = {
    {"--sweeps", "sweeps"},
    {"--reads", "reads"},
    {"--t-initial", "t-initial"},
    {"--t-final", "t-final"},
    {"--restarts", "restarts"},
    {"--descent-sweeps", "descent-sweeps"},
    {"--iterations", "iterations"},
    {"--shots", "shots"},
    {"--cvar", "cvar"},
    {"--hx", "hx"},
    {"--total-time", "total-time"},
    {"--quad-nodes", "quad-nodes"},
    {"--greedy-post", "greedy-post"},
    {"--K", "K"},
    {"--W", "W"},
    {"--rescale-cap", "rescale-cap"},
    {"--max-bf-runs", "max-bf-runs"},
    {"--warm-start", "warm-start"},
    {"--warm-sweeps", "warm-sweeps"},
    {"--warm-reads", "warm-reads"},
    {"--oracle", "oracle"},
};

void check_solver_flags(const CLI::App& cmd, const std::string& solver) {
  for (const auto& [flag, key] : kSolverFlagKeys) {
    if (cmd.count(flag) > 0 && !hubb::cli::key_allowed(solver, key)) {
      throw std::invalid_argument(flag + " does not apply to solver '" + solver + "'");
    }
  }
}

double wall_ms_since(std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(elapsed).count();
}

int cmd_generate(const GenerateOptions& options, const std::string& out) {
  hubb::InstanceSpec spec;
  spec.n = options.n;
  if (options.topology == "sparse-chain") {
    spec.topology = hubb::Topology::kSparseChain;
  } else if (options.topology == "dense") {
    spec.topology = hubb::Topology::kDenseRandom;
  } else {
    throw std::invalid_argument("topology must be 'sparse-chain' or 'dense'");
  }
  spec.n2 = options.n2;
  spec.n3 = options.n3;
  spec.coeff_low = options.coeff_low;
  spec.coeff_high = options.coeff_high;
  spec.seed = options.seed;
  const hubb::HuboProblem problem = hubb::generate(spec);
  hubb::InstanceMetadata meta;
  meta.seed = options.seed;
  meta.topology = options.topology;
  char dist[64];
  std::snprintf(dist, sizeof dist, "uniform[%g,%g)", options.coeff_low, options.coeff_high);
  meta.distribution = dist;
  hubb::cli::emit_output(hubb::serialize(problem, meta), out);
  return 0;
}

int cmd_solve(const SolveCmd& cmd) {
  const hubb::HuboProblem problem = hubb::parse_instance(hubb::cli::read_file(cmd.instance)).problem;
  const auto start = std::chrono::steady_clock::now();
  const hubb::cli::SolverOutcome outcome = run_solver(problem, cmd.options, cmd.seed);
  std::fprintf(stderr, "wall_ms=%.3f\n", wall_ms_since(start));
  const std::string text =
      cmd.format == "json"
          ? record_json(outcome, cmd.options, cmd.seed, cmd.instance, problem).dump(2) + "\n"
          : record_csv(outcome, cmd.options, cmd.seed, problem);
  hubb::cli::emit_output(text, cmd.out);
  return 0;
}

int cmd_bench(const BenchOptions& options, const std::string& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::string text = run_bench(options);
  std::fprintf(stderr, "wall_ms=%.3f\n", wall_ms_since(start));
  hubb::cli::emit_output(text, out);
  return 0;
}

int cmd_quadratize(const QuadratizeCmd& cmd) {
  const hubb::HuboProblem problem = hubb::parse_instance(hubb::cli::read_file(cmd.instance)).problem;
  double penalty;
  if (cmd.penalty) {
    penalty = *cmd.penalty;
  } else {
    double max_abs = 0.0;
    for (const auto& t : problem.linear()) max_abs = std::max(max_abs, std::fabs(t.c));
    for (const auto& t : problem.quadratic()) max_abs = std::max(max_abs, std::fabs(t.c));
    for (const auto& t : problem.cubic()) max_abs = std::max(max_abs, std::fabs(t.c));
    penalty = max_abs > 0.0 ? cmd.penalty_factor * max_abs : 1.0;
  }
  const auto [qubo, map] = hubb::hubo_to_qubo(problem, penalty);
  hubb::cli::emit_output(hubb::serialize_qubo(qubo, map), cmd.out);
  return 0;
}

int cmd_verify_reduction(const VerifyCmd& cmd) {
  const hubb::HuboProblem problem = hubb::parse_instance(hubb::cli::read_file(cmd.instance)).problem;
  const hubb::ParsedQubo parsed = hubb::parse_qubo(hubb::cli::read_file(cmd.qubo));
  const hubb::ReductionReport report = hubb::verify_reduction(problem, parsed.qubo, parsed.map);
  std::string text;
  if (cmd.format == "json") {
    json doc{{"pass", report.pass()},
             {"minima_match", report.minima_match},
             {"minimizers_consistent", report.minimizers_consistent},
             {"projections_optimal", report.projections_optimal},
             {"hubo_minimum", report.hubo_minimum},
             {"qubo_minimum", report.qubo_minimum},
             {"minimal_penalty", report.minimal_penalty}};
    text = doc.dump(2) + "\n";
  } else {
    text =
        "pass,minima_match,minimizers_consistent,projections_optimal,hubo_minimum,"
        "qubo_minimum,minimal_penalty\n";
    const auto flag = [](bool b) { return b ? "true" : "false"; };
    text += std::string(flag(report.pass())) + ',' + flag(report.minima_match) + ',' +
            flag(report.minimizers_consistent) + ',' + flag(report.projections_optimal) + ',' +
            hubb::cli::fmt_double(report.hubo_minimum) + ',' +
            hubb::cli::fmt_double(report.qubo_minimum) + ',' +
            hubb::cli::fmt_double(report.minimal_penalty) + '\n';
  }
  hubb::cli::emit_output(text, cmd.out);
  return 0;  // the verdict lives in the report, not the exit code
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hubb: HUBO instance generation, solving and budget-matched benchmarking"};
  app.require_subcommand(1);

  GenerateOptions gen;
  std::string gen_out;
  CLI::App* generate = app.add_subcommand("generate", "Generate a random HUBO instance file");
  generate->add_option("--n", gen.n, "Spin count")->required();
  generate->add_option("--topology", gen.topology, "sparse-chain | dense")
      ->check(CLI::IsMember({"sparse-chain", "dense"}));
  generate->add_option("--n2", gen.n2, "Dense topology: number of pair terms");
  generate->add_option("--n3", gen.n3, "Dense topology: number of triple terms");
  generate->add_option("--coeff-low", gen.coeff_low, "Coefficient range lower edge");
  generate->add_option("--coeff-high", gen.coeff_high, "Coefficient range upper edge");
  generate->add_option("--seed", gen.seed, "Generator seed (recorded in the file)");
  generate->add_option("--out", gen_out, "Output path (stdout when omitted)");

  SolveCmd solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run one solver on one instance");
  solve_cmd->add_option("solver", solve.options.solver, "sa|greedy|bfdcqo|bbb|exact-bbb|brute")
      ->required()
      ->check(CLI::IsMember({"sa", "greedy", "bfdcqo", "bbb", "exact-bbb", "brute"}));
  solve_cmd->add_option("--instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--seed", solve.seed, "Run seed (all streams derive from it)");
  solve_cmd->add_option("--out", solve.out, "Output path (stdout when omitted)");
  solve_cmd->add_option("--format", solve.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  solve_cmd->add_option("--sweeps", solve.options.sweeps, "sa: sweeps per read");
  solve_cmd->add_option("--reads", solve.options.reads, "sa: independent reads");
  solve_cmd->add_option("--t-initial", solve.options.t_initial,
                        "sa: initial temperature (calibrated when omitted)");
  solve_cmd->add_option("--t-final", solve.options.t_final,
                        "sa: final temperature (calibrated when omitted)");
  solve_cmd->add_option("--restarts", solve.options.restarts, "greedy: random restarts");
  solve_cmd->add_option("--descent-sweeps", solve.options.descent_sweeps,
                        "greedy: sweep cap per descent");
  solve_cmd->add_option("--iterations", solve.options.iterations, "bfdcqo: feedback rounds");
  solve_cmd->add_option("--shots", solve.options.shots, "bfdcqo: shots per round");
  solve_cmd->add_option("--cvar", solve.options.cvar_fraction, "bfdcqo: CVaR tail fraction");
  solve_cmd->add_option("--hx", solve.options.hx, "bfdcqo: uniform transverse field");
  solve_cmd->add_option("--total-time", solve.options.total_time, "bfdcqo: schedule length");
  solve_cmd->add_option("--quad-nodes", solve.options.quadrature_nodes,
                        "bfdcqo: quadrature nodes for the angle integral");
  solve_cmd->add_flag("--greedy-post", solve.options.greedy_post,
                      "bfdcqo: greedy-refine the best sampled bitstrings");
  solve_cmd->add_option("--K", solve.options.k, "bbb: tree depth (2K+1 runs)");
  solve_cmd->add_option("--W", solve.options.w, "bbb: branch bias magnitude");
  solve_cmd->add_option("--rescale-cap", solve.options.rescale_cap,
                        "bbb: bias clamp applied at branching");
  solve_cmd->add_option("--max-bf-runs", solve.options.max_bf_runs,
                        "bbb: refuse plans beyond this run budget");
  solve_cmd->add_option("--warm-start", solve.options.warm_start, "bbb: none | sa")
      ->check(CLI::IsMember({"none", "sa"}));
  solve_cmd->add_option("--warm-sweeps", solve.options.warm_sweeps, "bbb: warm-start SA sweeps");
  solve_cmd->add_option("--warm-reads", solve.options.warm_reads, "bbb: warm-start SA reads");
  solve_cmd->add_option("--oracle", solve.options.oracle, "exact-bbb: brute | trivial")
      ->check(CLI::IsMember({"brute", "trivial"}));

  BenchOptions bench;
  std::string bench_out;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Compare two solvers across an instance set");
  bench_cmd->add_option("--instance", bench.instances, "Instance file (repeatable)")->required();
  bench_cmd->add_option("--solver-a", bench.solver_a, "Spec, e.g. sa:sweeps=1000,reads=100")
      ->required();
  bench_cmd->add_option("--solver-b", bench.solver_b, "Spec, e.g. bbb:K=3,shots=2000")
      ->required();
  bench_cmd->add_option("--seed", bench.seed, "Benchmark seed (per-cell seeds derive from it)");
  bench_cmd->add_flag("--allow-uneven", bench.allow_uneven,
                      "Permit budgets that differ by more than 5% or are unplanned");
  bench_cmd->add_option("--ref-energy", bench.ref_energies,
                        "Reference energy per instance (brute force when omitted)");
  bench_cmd->add_option("--out", bench_out, "Output path (stdout when omitted)");
  bench_cmd->add_option("--format", bench.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  QuadratizeCmd quad;
  CLI::App* quad_cmd =
      app.add_subcommand("quadratize", "Reduce a HUBO instance to a QUBO file");
  quad_cmd->add_option("--instance", quad.instance, "Instance file")->required();
  quad_cmd->add_option("--penalty", quad.penalty, "Explicit product-constraint penalty");
  quad_cmd
      ->add_option("--penalty-factor", quad.penalty_factor,
                   "Penalty as a multiple of max |coefficient| (1 if the instance is empty)")
      ->excludes("--penalty");
  quad_cmd->add_option("--out", quad.out, "Output path (stdout when omitted)");

  VerifyCmd verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify-reduction", "Exhaustively check a QUBO file against its HUBO instance");
  verify_cmd->add_option("--instance", verify.instance, "Instance file")->required();
  verify_cmd->add_option("--qubo", verify.qubo, "QUBO file")->required();
  verify_cmd->add_option("--out", verify.out, "Output path (stdout when omitted)");
  verify_cmd->add_option("--format", verify.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, gen_out);
    if (solve_cmd->parsed()) {
      check_solver_flags(*solve_cmd, solve.options.solver);
      return cmd_solve(solve);
    }
    if (bench_cmd->parsed()) return cmd_bench(bench, bench_out);
    if (quad_cmd->parsed()) return cmd_quadratize(quad);
    if (verify_cmd->parsed()) return cmd_verify_reduction(verify);
    std::fprintf(stderr, "error: no subcommand\n");
    return kExitBadInput;
  } catch (const hubb::CapExceeded& e) {
    std::fprintf(stderr, "cap exceeded: %s\n", e.what());
    return kExitCapExceeded;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  }
}
