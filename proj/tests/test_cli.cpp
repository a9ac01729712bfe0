// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests of the hubb binary (path supplied via HUBB_CLI). Each run
// goes through a real subprocess so exit codes, files and formats are checked
// exactly as a user sees them.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hubb/classical.hpp"
#include "hubb/hubo.hpp"
#include "hubb/quadratize.hpp"
#include "hubb/rng.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string cli_path() {
  const char* env = std::getenv("HUBB_CLI");
  REQUIRE_MESSAGE(env != nullptr, "HUBB_CLI must point at the hubb binary");
  return env;
}

std::string slurp(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  REQUIRE_MESSAGE(file.good(), "cannot read " << path.string());
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

// Scratch directory per test case, wiped on entry so reruns start clean.
fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path("cli_scratch") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct CmdResult {
  int code = -1;
  std::string out;
  std::string err;
};

CmdResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string command =
      cli_path() + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  CmdResult result;
  result.code = WEXITSTATUS(status);
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

std::string chain_instance(const fs::path& dir, int n, std::uint64_t seed) {
  const fs::path path = dir / ("chain" + std::to_string(n) + "_" + std::to_string(seed) + ".json");
  const CmdResult r = run_cli("generate --n " + std::to_string(n) +
                                  " --topology sparse-chain --seed " + std::to_string(seed) +
                                  " --out " + path.string(),
                              dir);
  REQUIRE(r.code == 0);
  return path.string();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

// Coefficients on a 1/256 grid keep both energy evaluations exact, so the
// reduction report's equality checks are meaningful end to end.
double grid_coeff(hubb::Rng& rng) {
  while (true) {
    const int k = static_cast<int>(rng.next_below(512)) - 256;
    if (k != 0) return static_cast<double>(k) / 256.0;
  }
}

hubb::HuboProblem grid_chain(std::uint64_t seed, int n) {
  hubb::Rng rng(seed);
  std::vector<hubb::LinearTerm> linear;
  std::vector<hubb::PairTerm> quadratic;
  std::vector<hubb::TripleTerm> cubic;
  for (int i = 0; i < n; ++i) linear.push_back({i, grid_coeff(rng)});
  for (int i = 0; i + 1 < n; ++i) quadratic.push_back({i, i + 1, grid_coeff(rng)});
  for (int i = 0; i + 2 < n; ++i) cubic.push_back({i, i + 1, i + 2, grid_coeff(rng)});
  return hubb::HuboProblem(n, std::move(linear), std::move(quadratic), std::move(cubic));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate writes the declared chain shape and reruns byte-identically") {
  const fs::path dir = fresh_dir("generate_chain");
  const std::string first = chain_instance(dir, 12, 7);
  const hubb::ParsedInstance parsed = hubb::parse_instance(slurp(first));
  CHECK(parsed.problem.n() == 12);
  CHECK(parsed.problem.linear().size() == 12);
  CHECK(parsed.problem.quadratic().size() == 11);
  CHECK(parsed.problem.cubic().size() == 10);
  REQUIRE(parsed.meta.seed.has_value());
  CHECK(*parsed.meta.seed == 7);
  CHECK(parsed.meta.topology == "sparse-chain");

  const fs::path again = dir / "again.json";
  const CmdResult r = run_cli(
      "generate --n 12 --topology sparse-chain --seed 7 --out " + again.string(), dir);
  REQUIRE(r.code == 0);
  CHECK(slurp(first) == slurp(again));
}

TEST_CASE("generate honors dense term counts") {
  const fs::path dir = fresh_dir("generate_dense");
  const fs::path path = dir / "dense.json";
  const CmdResult r = run_cli(
      "generate --n 20 --topology dense --n2 36 --n3 48 --seed 1 --out " + path.string(), dir);
  REQUIRE(r.code == 0);
  const hubb::ParsedInstance parsed = hubb::parse_instance(slurp(path));
  CHECK(parsed.problem.n() == 20);
  CHECK(parsed.problem.quadratic().size() == 36);
  CHECK(parsed.problem.cubic().size() == 48);
}

TEST_CASE("solve brute matches the library oracle record") {
  const fs::path dir = fresh_dir("solve_brute");
  const std::string instance = chain_instance(dir, 10, 21);
  const CmdResult r = run_cli("solve brute --instance " + instance, dir);
  REQUIRE(r.code == 0);
  const json rec = json::parse(r.out);

  const hubb::HuboProblem problem = hubb::parse_instance(slurp(instance)).problem;
  const hubb::BruteForceResult oracle = hubb::brute_force(problem);
  CHECK(rec["best_energy"].get<double>() == oracle.energy);
  REQUIRE(rec["best_assignment"].size() == oracle.z.size());
  for (std::size_t i = 0; i < oracle.z.size(); ++i) {
    CHECK(rec["best_assignment"][i].get<int>() == oracle.z[i]);
  }
  CHECK(rec["evals"]["total"].get<std::uint64_t>() == 0);
  CHECK(rec["solver"] == "brute");
  CHECK(rec["instance"]["n"].get<int>() == 10);
  CHECK(rec["instance"]["terms"].get<int>() == 27);
}

TEST_CASE("a depth-zero tree run equals the plain bias-field run") {
  const fs::path dir = fresh_dir("k0_equivalence");
  const std::string instance = chain_instance(dir, 10, 23);
  const std::string flags = " --instance " + instance + " --seed 9 --iterations 2 --shots 400";
  const CmdResult tree = run_cli("solve bbb --K 0" + flags, dir);
  REQUIRE(tree.code == 0);
  const CmdResult flat = run_cli("solve bfdcqo" + flags, dir);
  REQUIRE(flat.code == 0);
  const json a = json::parse(tree.out);
  const json b = json::parse(flat.out);
  CHECK(a["best_energy"] == b["best_energy"]);
  CHECK(a["best_assignment"] == b["best_assignment"]);
  CHECK(a["evals"] == b["evals"]);
  CHECK(a["config"]["k"].get<int>() == 0);
  CHECK(a.contains("tree"));
  CHECK_FALSE(b.contains("tree"));
}

TEST_CASE("identical flags and seeds reproduce solve and bench outputs byte for byte") {
  const fs::path dir = fresh_dir("determinism");
  const std::string instance = chain_instance(dir, 10, 25);
  const std::string solve_cmd = "solve bbb --K 2 --iterations 2 --shots 400 --seed 42 "
                                "--instance " + instance + " --out ";
  const fs::path s1 = dir / "s1.json";
  const fs::path s2 = dir / "s2.json";
  const CmdResult r1 = run_cli(solve_cmd + s1.string(), dir);
  REQUIRE(r1.code == 0);
  REQUIRE(run_cli(solve_cmd + s2.string(), dir).code == 0);
  CHECK(slurp(s1) == slurp(s2));

  // Timing stays on stderr; the record's key set is fixed and reproducible.
  CHECK(r1.err.find("wall_ms=") != std::string::npos);
  const json rec = json::parse(slurp(s1));
  std::vector<std::string> keys;
  for (const auto& item : rec.items()) keys.push_back(item.key());
  const std::vector<std::string> expected = {"best_assignment", "best_energy", "config",
                                             "evals",           "instance",    "seed",
                                             "solver",          "tree"};
  CHECK(keys == expected);

  const std::string bench_cmd = "bench --instance " + instance +
                                " --solver-a sa:sweeps=200,reads=100"
                                " --solver-b sa:sweeps=200,reads=100 --seed 5 --out ";
  const fs::path b1 = dir / "b1.csv";
  const fs::path b2 = dir / "b2.csv";
  REQUIRE(run_cli(bench_cmd + b1.string(), dir).code == 0);
  REQUIRE(run_cli(bench_cmd + b2.string(), dir).code == 0);
  CHECK(slurp(b1) == slurp(b2));
}

TEST_CASE("exit codes distinguish bad input from solver caps") {
  const fs::path dir = fresh_dir("exit_codes");
  const std::string instance = chain_instance(dir, 10, 27);

  CHECK(run_cli("solve brute --instance " + (dir / "missing.json").string(), dir).code == 2);
  CHECK(run_cli("solve sa --instance " + instance + " --shots 5", dir).code == 2);
  CHECK(run_cli("solve sa --instance " + instance + " --bogus 1", dir).code == 2);
  CHECK(run_cli("generate --n 8 --topology ring", dir).code == 2);
  CHECK(run_cli("bench --instance " + instance + " --solver-a sa --solver-b sa:sweeps", dir)
            .code == 2);
  CHECK(run_cli("bench --instance " + instance +
                    " --solver-a sa --solver-b sa --ref-energy 1 --ref-energy 2",
                dir)
            .code == 2);

  const std::string big = chain_instance(dir, 30, 1);
  CHECK(run_cli("solve brute --instance " + big, dir).code == 3);

  const std::string wide = chain_instance(dir, 15, 2);
  const fs::path qubo = dir / "wide_qubo.json";
  REQUIRE(run_cli("quadratize --instance " + wide + " --out " + qubo.string(), dir).code == 0);
  CHECK(run_cli("verify-reduction --instance " + wide + " --qubo " + qubo.string(), dir).code ==
        3);
}

TEST_CASE("uneven budgets are refused unless explicitly allowed") {
  const fs::path dir = fresh_dir("budget_policy");
  const std::string instance = chain_instance(dir, 10, 29);
  const std::string pair = "bench --instance " + instance +
                           " --solver-a sa:sweeps=1000,reads=100"
                           " --solver-b bfdcqo:iterations=2,shots=500 --seed 3";
  const CmdResult refused = run_cli(pair, dir);
  CHECK(refused.code == 2);
  CHECK(refused.err.find("--allow-uneven") != std::string::npos);
  CHECK(run_cli(pair + " --allow-uneven", dir).code == 0);

  // Unplannable solvers are refused too: greedy's flip count is data driven.
  const CmdResult unplanned = run_cli("bench --instance " + instance +
                                          " --solver-a greedy:restarts=20 --solver-b "
                                          "sa:sweeps=200,reads=100 --seed 3",
                                      dir);
  CHECK(unplanned.code == 2);
  CHECK(unplanned.err.find("planned") != std::string::npos);
}

TEST_CASE("a solver benched against itself ties on every instance") {
  const fs::path dir = fresh_dir("self_play");
  const std::string first = chain_instance(dir, 10, 31);
  const std::string second = chain_instance(dir, 10, 32);
  const CmdResult r = run_cli("bench --instance " + first + " --instance " + second +
                                  " --solver-a sa:sweeps=200,reads=100"
                                  " --solver-b sa:sweeps=200,reads=100 --seed 5",
                              dir);
  REQUIRE(r.code == 0);
  const std::vector<std::string> lines = split_lines(r.out);
  REQUIRE(lines.size() >= 3);
  CHECK(split_csv(lines[0]).at(8) == "winner");
  for (std::size_t i = 1; i <= 2; ++i) {
    const std::vector<std::string> row = split_csv(lines[i]);
    CHECK(row.at(7) == "0");    // delta
    CHECK(row.at(8) == "tie");  // winner
    CHECK(row.at(9) == row.at(10));
  }
  bool found_tally = false;
  for (const std::string& line : lines) {
    if (line == "# wins_a=0 ties=2 wins_b=0") found_tally = true;
  }
  CHECK(found_tally);
}

TEST_CASE("budget-matched cross-solver comparisons pass the harness check") {
  const fs::path dir = fresh_dir("budget_matched");
  const std::string instance = chain_instance(dir, 10, 33);
  // n=10: SA plans 20*100*10 = 20000 flips; the tree plans (2*2+1)*2*2000
  // = 20000 shots. Equal budgets, no --allow-uneven needed.
  const CmdResult r = run_cli("bench --instance " + instance +
                                  " --solver-a sa:sweeps=20,reads=100"
                                  " --solver-b bbb:K=2,iterations=2,shots=2000 --seed 6"
                                  " --format json",
                              dir);
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["summary"]["planned_evals_a"].get<std::uint64_t>() == 20000);
  CHECK(doc["summary"]["planned_evals_b"].get<std::uint64_t>() == 20000);
  CHECK(doc["summary"]["actual_evals_a"].get<std::uint64_t>() == 20000);
  CHECK(doc["summary"]["actual_evals_b"].get<std::uint64_t>() == 20000);
  REQUIRE(doc["instances"].size() == 1);
  const json& row = doc["instances"][0];
  // The chain optimum is negative, so the ratio column is live and in (0,1].
  CHECK(row["e_ref"].get<double>() < 0.0);
  CHECK(row["ratio_a"].is_number());
  CHECK(row["ratio_b"].is_number());
  CHECK(row["ratio_a"].get<double>() <= 1.0);
  CHECK(row["ratio_a"].get<double>() > 0.0);
  CHECK(row["gap_a"].get<double>() >= 0.0);
  CHECK(row["gap_b"].get<double>() >= 0.0);
}

TEST_CASE("the annealing preset books its advertised ledger through the CLI") {
  const fs::path dir = fresh_dir("sa_preset");
  const std::string instance = chain_instance(dir, 156, 99);
  const CmdResult r = run_cli("solve sa --instance " + instance +
                                  " --seed 1 --sweeps 1000 --reads 100 --format csv",
                              dir);
  REQUIRE(r.code == 0);
  const std::vector<std::string> lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "solver,seed,n,best_energy,assignment,quantum_shots,sa_flips,greedy_flips,total_evals");
  const std::vector<std::string> row = split_csv(lines[1]);
  CHECK(row.at(0) == "sa");
  CHECK(row.at(2) == "156");
  CHECK(row.at(4).size() == 156);
  CHECK(row.at(6) == "15600000");
  CHECK(row.at(8) == "15600000");
}

TEST_CASE("quadratize and verify-reduction round-trip through files") {
  const fs::path dir = fresh_dir("quadratize_roundtrip");
  // Grid coefficients keep the HUBO and QUBO minima exactly equal, so the
  // report's strict equality checks can pass end to end.
  const hubb::HuboProblem problem = grid_chain(401, 8);
  const fs::path instance = dir / "grid8.json";
  {
    std::ofstream file(instance);
    file << hubb::serialize(problem);
  }
  const fs::path qubo = dir / "grid8_qubo.json";
  REQUIRE(run_cli("quadratize --instance " + instance.string() + " --penalty-factor 10 --out " +
                      qubo.string(),
                  dir)
              .code == 0);

  const hubb::ParsedQubo parsed = hubb::parse_qubo(slurp(qubo));
  CHECK(parsed.qubo.m() == 11);  // 8 spins + ceil(6/2) shared-pair auxiliaries
  CHECK(parsed.map.aux.size() == 3);

  const CmdResult r = run_cli(
      "verify-reduction --instance " + instance.string() + " --qubo " + qubo.string(), dir);
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["pass"] == true);
  CHECK(report["minima_match"] == true);
  CHECK(report["minimizers_consistent"] == true);
  CHECK(report["projections_optimal"] == true);
  CHECK(report["hubo_minimum"] == report["qubo_minimum"]);
  CHECK(report["minimal_penalty"].get<double>() <= 10.0);
}

}  // TEST_SUITE
