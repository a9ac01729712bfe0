// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#include "harness.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hubb/bbb.hpp"
#include "hubb/bfdcqo.hpp"
#include "hubb/classical.hpp"
#include "hubb/rng.hpp"

namespace hubb::cli {
namespace {

using nlohmann::json;

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<std::string>& keys_for(const std::string& solver) {
  static const std::vector<std::string> kNone;
  static const std::vector<std::string> kSa = {"sweeps", "reads", "t-initial", "t-final"};
  static const std::vector<std::string> kGreedy = {"restarts", "descent-sweeps"};
  static const std::vector<std::string> kBf = {"iterations", "shots",      "cvar",
                                               "hx",         "total-time", "quad-nodes",
                                               "greedy-post"};
  static const std::vector<std::string> kBbb =
      cat(kBf, {"K", "W", "rescale-cap", "max-bf-runs", "warm-start", "warm-sweeps",
                "warm-reads"});
  static const std::vector<std::string> kExact = cat(kBf, {"oracle"});
  if (solver == "sa") return kSa;
  if (solver == "greedy") return kGreedy;
  if (solver == "bfdcqo") return kBf;
  if (solver == "bbb") return kBbb;
  if (solver == "exact-bbb") return kExact;
  if (solver == "brute") return kNone;
  throw std::invalid_argument("unknown solver '" + solver + "'");
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  int out = 0;
  try {
    out = std::stoi(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (value.empty() || pos != value.size()) {
    throw std::invalid_argument("expected an integer for '" + key + "', got '" + value + "'");
  }
  return out;
}

double parse_num(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (value.empty() || pos != value.size()) {
    throw std::invalid_argument("expected a number for '" + key + "', got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("expected true/false for '" + key + "', got '" + value + "'");
}

void apply_key(SolveOptions& o, const std::string& key, const std::string& value) {
  if (!key_allowed(o.solver, key)) {
    throw std::invalid_argument("parameter '" + key + "' does not apply to solver '" +
                                o.solver + "'");
  }
  if (key == "sweeps") {
    o.sweeps = parse_int(key, value);
  } else if (key == "reads") {
    o.reads = parse_int(key, value);
  } else if (key == "t-initial") {
    o.t_initial = parse_num(key, value);
  } else if (key == "t-final") {
    o.t_final = parse_num(key, value);
  } else if (key == "restarts") {
    o.restarts = parse_int(key, value);
  } else if (key == "descent-sweeps") {
    o.descent_sweeps = parse_int(key, value);
  } else if (key == "iterations") {
    o.iterations = parse_int(key, value);
  } else if (key == "shots") {
    o.shots = parse_int(key, value);
  } else if (key == "cvar") {
    o.cvar_fraction = parse_num(key, value);
  } else if (key == "hx") {
    o.hx = parse_num(key, value);
  } else if (key == "total-time") {
    o.total_time = parse_num(key, value);
  } else if (key == "quad-nodes") {
    o.quadrature_nodes = parse_int(key, value);
  } else if (key == "greedy-post") {
    o.greedy_post = parse_bool(key, value);
  } else if (key == "K") {
    o.k = parse_int(key, value);
  } else if (key == "W") {
    o.w = parse_num(key, value);
  } else if (key == "rescale-cap") {
    o.rescale_cap = parse_num(key, value);
  } else if (key == "max-bf-runs") {
    o.max_bf_runs = parse_int(key, value);
  } else if (key == "warm-start") {
    o.warm_start = value;
  } else if (key == "warm-sweeps") {
    o.warm_sweeps = parse_int(key, value);
  } else if (key == "warm-reads") {
    o.warm_reads = parse_int(key, value);
  } else if (key == "oracle") {
    o.oracle = value;
  } else {
    throw std::invalid_argument("unknown parameter '" + key + "'");
  }
}

BfdcqoConfig bf_config_from(const SolveOptions& o, std::uint64_t seed) {
  BfdcqoConfig c;
  c.iterations = o.iterations;
  c.n_shots = o.shots;
  c.cvar_fraction = o.cvar_fraction;
  c.schedule.total_time = o.total_time;
  c.cd.quadrature_nodes = o.quadrature_nodes;
  c.hx_value = o.hx;
  c.greedy_post = o.greedy_post;
  c.rng_seed = seed;
  return c;
}

json opt_num(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json opt_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json bf_echo(const SolveOptions& o) {
  return json{{"iterations", o.iterations},
              {"shots", o.shots},
              {"cvar_fraction", o.cvar_fraction},
              {"hx", o.hx},
              {"total_time", o.total_time},
              {"quadrature_nodes", o.quadrature_nodes},
              {"greedy_post", o.greedy_post}};
}

SolverOutcome solve_brute(const HuboProblem& p) {
  BruteForceResult r = brute_force(p);
  SolverOutcome out;
  out.best_z = r.z;
  out.best_energy = r.energy;
  out.config = json::object();
  return out;
}

SolverOutcome solve_sa(const HuboProblem& p, const SolveOptions& o, std::uint64_t seed) {
  SaConfig c;
  c.sweeps = o.sweeps;
  c.reads = o.reads;
  c.t_initial = o.t_initial;
  c.t_final = o.t_final;
  c.rng_seed = seed;
  auto [samples, evals] = simulated_annealing(p, c);
  SolverOutcome out;
  out.best_z = samples.best().z;
  out.best_energy = samples.best().energy;
  out.evals = evals;
  out.config = json{{"sweeps", o.sweeps},
                    {"reads", o.reads},
                    {"t_initial", opt_num(o.t_initial)},
                    {"t_final", opt_num(o.t_final)}};
  return out;
}

SolverOutcome solve_greedy(const HuboProblem& p, const SolveOptions& o, std::uint64_t seed) {
  if (o.restarts < 1) throw std::invalid_argument("greedy needs restarts >= 1");
  SolverOutcome out;
  out.best_energy = std::numeric_limits<double>::infinity();
  GreedyConfig gc;
  gc.sweeps = o.descent_sweeps;
  for (int r = 0; r < o.restarts; ++r) {
    const std::uint64_t rs = derive_seed(seed, static_cast<std::uint64_t>(r));
    Rng start(derive_seed(rs, 0));
    SpinAssignment z(static_cast<std::size_t>(p.n()));
    for (auto& s : z) s = start.next_below(2) == 0 ? std::int8_t{1} : std::int8_t{-1};
    gc.rng_seed = derive_seed(rs, 1);
    std::uint64_t flips = 0;
    SpinAssignment local = greedy_local_search(p, std::move(z), gc, &flips);
    out.evals.greedy_flips += flips;
    const double e = p.energy(local);
    if (e < out.best_energy) {
      out.best_energy = e;
      out.best_z = std::move(local);
    }
  }
  out.config = json{{"restarts", o.restarts}, {"descent_sweeps", o.descent_sweeps}};
  return out;
}

SolverOutcome solve_bfdcqo(const HuboProblem& p, const SolveOptions& o, std::uint64_t seed) {
  BfdcqoResult r = run_bfdcqo(p, BiasField::zero(p.n()), bf_config_from(o, seed));
  SolverOutcome out;
  out.best_z = r.best_z;
  out.best_energy = r.best_energy;
  out.evals = r.evals;
  out.config = bf_echo(o);
  return out;
}

SolverOutcome solve_bbb(const HuboProblem& p, const SolveOptions& o, std::uint64_t seed) {
  BbbConfig c;
  c.k = o.k;
  c.w = o.w;
  c.rescale_cap = o.rescale_cap;
  c.bf = bf_config_from(o, seed);
  c.max_bf_runs = o.max_bf_runs;
  FunctionEvalCounter warm_evals;
  if (o.warm_start == "sa") {
    SaConfig wc;
    wc.sweeps = o.warm_sweeps;
    wc.reads = o.warm_reads;
    wc.rng_seed = derive_seed(seed, kWarmStartStream);
    auto [samples, evals] = simulated_annealing(p, wc);
    c.warm_start = samples.best().z;
    warm_evals = evals;
  } else if (o.warm_start != "none") {
    throw std::invalid_argument("warm-start must be 'none' or 'sa', got '" + o.warm_start + "'");
  }
  ApproximateBbbResult r = approximate_bbb(p, c);
  SolverOutcome out;
  out.best_z = r.best_z;
  out.best_energy = r.best_energy;
  out.evals = warm_evals;
  out.evals += r.evals;
  out.tree = dump_tree(r.tree);
  out.config = bf_echo(o);
  out.config["k"] = o.k;
  out.config["w"] = o.w;
  out.config["rescale_cap"] = o.rescale_cap;
  out.config["max_bf_runs"] = opt_int(o.max_bf_runs);
  out.config["warm_start"] = o.warm_start;
  out.config["warm_sweeps"] = o.warm_sweeps;
  out.config["warm_reads"] = o.warm_reads;
  return out;
}

SolverOutcome solve_exact_bbb(const HuboProblem& p, const SolveOptions& o, std::uint64_t seed) {
  RelaxationOracle oracle;
  if (o.oracle == "brute") {
    oracle = brute_force_relaxation;
  } else if (o.oracle == "trivial") {
    oracle = trivial_relaxation;
  } else {
    throw std::invalid_argument("oracle must be 'brute' or 'trivial', got '" + o.oracle + "'");
  }
  ExactBbbResult r = exact_bbb(p, oracle, bf_config_from(o, seed));
  SolverOutcome out;
  out.best_z = r.best_z;
  out.best_energy = r.best_energy;
  out.evals = r.evals;
  out.node_count = r.node_count;
  out.config = bf_echo(o);
  out.config["oracle"] = o.oracle;
  return out;
}

json evals_json(const FunctionEvalCounter& evals) {
  return json{{"quantum_shots", evals.quantum_shots},
              {"sa_flips", evals.sa_flips},
              {"greedy_flips", evals.greedy_flips},
              {"total", evals.total()}};
}

// Ratio is only well defined when both energies share the negative sign;
// otherwise callers fall back to the gap column.
std::optional<double> approx_ratio(double e_min, double e_ref) {
  if (e_min < 0.0 && e_ref < 0.0) return e_min / e_ref;
  return std::nullopt;
}

struct BenchCell {
  std::uint64_t seed_a = 0;
  std::uint64_t seed_b = 0;
  double e_ref = 0.0;
  SolverOutcome a;
  SolverOutcome b;
};

}  // namespace

bool key_allowed(const std::string& solver, const std::string& key) {
  const auto& keys = keys_for(solver);
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

SolverOutcome run_solver(const HuboProblem& problem, const SolveOptions& options,
                         std::uint64_t seed) {
  if (options.solver == "brute") return solve_brute(problem);
  if (options.solver == "sa") return solve_sa(problem, options, seed);
  if (options.solver == "greedy") return solve_greedy(problem, options, seed);
  if (options.solver == "bfdcqo") return solve_bfdcqo(problem, options, seed);
  if (options.solver == "bbb") return solve_bbb(problem, options, seed);
  if (options.solver == "exact-bbb") return solve_exact_bbb(problem, options, seed);
  throw std::invalid_argument("unknown solver '" + options.solver + "'");
}

std::optional<std::uint64_t> planned_evals(const SolveOptions& options, int n) {
  if (options.solver == "sa") {
    return planned_sa_flips(n, options.sweeps, options.reads);
  }
  if (options.solver == "bfdcqo") {
    return planned_bfdcqo_shots(options.iterations, options.shots);
  }
  if (options.solver == "bbb") {
    std::uint64_t total = planned_bbb_shots(options.k, options.iterations, options.shots);
    if (options.warm_start == "sa") {
      total += planned_sa_flips(n, options.warm_sweeps, options.warm_reads);
    }
    return total;
  }
  return std::nullopt;  // brute, greedy, exact-bbb: cost is data dependent
}

SolveOptions parse_solver_spec(const std::string& text) {
  SolveOptions o;
  const std::size_t colon = text.find(':');
  o.solver = text.substr(0, colon);
  keys_for(o.solver);  // validates the name
  if (colon == std::string::npos) return o;
  const std::string rest = text.substr(colon + 1);
  std::stringstream stream(rest);
  std::string item;
  bool any = false;
  while (std::getline(stream, item, ',')) {
    const std::size_t eq = item.find('=');
    if (item.empty() || eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("malformed solver parameter '" + item + "' in '" + text +
                                  "' (expected key=value)");
    }
    apply_key(o, item.substr(0, eq), item.substr(eq + 1));
    any = true;
  }
  if (!any) {
    throw std::invalid_argument("solver spec '" + text + "' has a ':' but no parameters");
  }
  return o;
}

json record_json(const SolverOutcome& outcome, const SolveOptions& options, std::uint64_t seed,
                 const std::string& instance_path, const HuboProblem& problem) {
  json rec;
  rec["solver"] = options.solver;
  rec["seed"] = seed;
  rec["instance"] = json{{"path", instance_path},
                         {"n", problem.n()},
                         {"terms", problem.term_count()}};
  rec["config"] = outcome.config;
  rec["best_energy"] = outcome.best_energy;
  json assignment = json::array();
  for (std::int8_t s : outcome.best_z) assignment.push_back(static_cast<int>(s));
  rec["best_assignment"] = std::move(assignment);
  rec["evals"] = evals_json(outcome.evals);
  if (outcome.tree) rec["tree"] = *outcome.tree;
  if (outcome.node_count) rec["node_count"] = *outcome.node_count;
  return rec;
}

std::string record_csv(const SolverOutcome& outcome, const SolveOptions& options,
                       std::uint64_t seed, const HuboProblem& problem) {
  std::string text =
      "solver,seed,n,best_energy,assignment,quantum_shots,sa_flips,greedy_flips,total_evals\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, ",%" PRIu64 ",%d,", seed, problem.n());
  text += options.solver;
  text += buf;
  text += fmt_double(outcome.best_energy);
  text += ',';
  text += spins_to_string(outcome.best_z);
  std::snprintf(buf, sizeof buf, ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 "\n",
                outcome.evals.quantum_shots, outcome.evals.sa_flips, outcome.evals.greedy_flips,
                outcome.evals.total());
  text += buf;
  return text;
}

std::string run_bench(const BenchOptions& options) {
  if (options.instances.empty()) {
    throw std::invalid_argument("bench needs at least one --instance");
  }
  const SolveOptions side_a = parse_solver_spec(options.solver_a);
  const SolveOptions side_b = parse_solver_spec(options.solver_b);
  if (!options.ref_energies.empty() &&
      options.ref_energies.size() != options.instances.size()) {
    throw std::invalid_argument("--ref-energy count must match --instance count");
  }

  std::vector<HuboProblem> problems;
  problems.reserve(options.instances.size());
  for (const std::string& path : options.instances) {
    problems.push_back(parse_instance(read_file(path)).problem);
  }

  // Budget policy: refuse mismatched or unplannable comparisons up front.
  bool planned_a_known = true;
  bool planned_b_known = true;
  std::uint64_t planned_a_sum = 0;
  std::uint64_t planned_b_sum = 0;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto pa = planned_evals(side_a, problems[i].n());
    const auto pb = planned_evals(side_b, problems[i].n());
    if (!pa || !pb) {
      if (!options.allow_uneven) {
        const std::string which = !pa ? side_a.solver : side_b.solver;
        throw std::invalid_argument("solver '" + which +
                                    "' has no planned evaluation budget; pass --allow-uneven "
                                    "to compare anyway");
      }
      if (!pa) planned_a_known = false;
      if (!pb) planned_b_known = false;
    }
    if (pa && pb) {
      const double hi = static_cast<double>(std::max(*pa, *pb));
      const double gap = static_cast<double>(*pa > *pb ? *pa - *pb : *pb - *pa);
      if (gap > 0.05 * hi && !options.allow_uneven) {
        throw std::invalid_argument(
            "planned budgets differ by more than 5% on " + options.instances[i] + " (a=" +
            std::to_string(*pa) + ", b=" + std::to_string(*pb) +
            "); pass --allow-uneven to compare anyway");
      }
    }
    planned_a_sum += pa.value_or(0);
    planned_b_sum += pb.value_or(0);
  }

  // Instances are independent; run them in parallel and assemble in order.
  std::vector<std::future<BenchCell>> futures;
  futures.reserve(problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] {
      BenchCell cell;
      const std::uint64_t base = derive_seed(options.seed, static_cast<std::uint64_t>(i));
      cell.seed_a = derive_seed(base, 0);
      cell.seed_b = derive_seed(base, 1);
      cell.e_ref = options.ref_energies.empty() ? brute_force(problems[i]).energy
                                                : options.ref_energies[i];
      cell.a = run_solver(problems[i], side_a, cell.seed_a);
      cell.b = run_solver(problems[i], side_b, cell.seed_b);
      return cell;
    }));
  }
  std::vector<BenchCell> cells;
  cells.reserve(futures.size());
  for (auto& f : futures) cells.push_back(f.get());

  int wins_a = 0;
  int ties = 0;
  int wins_b = 0;
  FunctionEvalCounter actual_a;
  FunctionEvalCounter actual_b;
  for (const BenchCell& cell : cells) {
    if (cell.a.best_energy < cell.b.best_energy) {
      ++wins_a;
    } else if (cell.b.best_energy < cell.a.best_energy) {
      ++wins_b;
    } else {
      ++ties;
    }
    actual_a += cell.a.evals;
    actual_b += cell.b.evals;
  }

  if (options.format == "json") {
    json doc;
    doc["solver_a"] = options.solver_a;
    doc["solver_b"] = options.solver_b;
    doc["seed"] = options.seed;
    json rows = json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const BenchCell& cell = cells[i];
      const auto ratio_a = approx_ratio(cell.a.best_energy, cell.e_ref);
      const auto ratio_b = approx_ratio(cell.b.best_energy, cell.e_ref);
      const char* winner = cell.a.best_energy < cell.b.best_energy   ? "a"
                           : cell.b.best_energy < cell.a.best_energy ? "b"
                                                                     : "tie";
      rows.push_back(json{{"instance", options.instances[i]},
                          {"n", problems[i].n()},
                          {"seed_a", cell.seed_a},
                          {"seed_b", cell.seed_b},
                          {"e_ref", cell.e_ref},
                          {"energy_a", cell.a.best_energy},
                          {"energy_b", cell.b.best_energy},
                          {"delta", cell.a.best_energy - cell.b.best_energy},
                          {"winner", winner},
                          {"evals_a", cell.a.evals.total()},
                          {"evals_b", cell.b.evals.total()},
                          {"ratio_a", opt_num(ratio_a)},
                          {"ratio_b", opt_num(ratio_b)},
                          {"gap_a", cell.a.best_energy - cell.e_ref},
                          {"gap_b", cell.b.best_energy - cell.e_ref}});
    }
    doc["instances"] = std::move(rows);
    doc["summary"] = json{{"wins_a", wins_a},
                          {"ties", ties},
                          {"wins_b", wins_b},
                          {"planned_evals_a",
                           planned_a_known ? json(planned_a_sum) : json(nullptr)},
                          {"planned_evals_b",
                           planned_b_known ? json(planned_b_sum) : json(nullptr)},
                          {"actual_evals_a", actual_a.total()},
                          {"actual_evals_b", actual_b.total()}};
    return doc.dump(2) + "\n";
  }

  std::string text =
      "instance,n,seed_a,seed_b,e_ref,energy_a,energy_b,delta,winner,evals_a,evals_b,"
      "ratio_a,ratio_b,gap_a,gap_b\n";
  char buf[256];
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const BenchCell& cell = cells[i];
    const auto ratio_a = approx_ratio(cell.a.best_energy, cell.e_ref);
    const auto ratio_b = approx_ratio(cell.b.best_energy, cell.e_ref);
    const char* winner = cell.a.best_energy < cell.b.best_energy   ? "a"
                         : cell.b.best_energy < cell.a.best_energy ? "b"
                                                                   : "tie";
    text += options.instances[i];
    std::snprintf(buf, sizeof buf, ",%d,%" PRIu64 ",%" PRIu64 ",", problems[i].n(), cell.seed_a,
                  cell.seed_b);
    text += buf;
    text += fmt_double(cell.e_ref) + ',' + fmt_double(cell.a.best_energy) + ',' +
            fmt_double(cell.b.best_energy) + ',' +
            fmt_double(cell.a.best_energy - cell.b.best_energy) + ',';
    text += winner;
    std::snprintf(buf, sizeof buf, ",%" PRIu64 ",%" PRIu64 ",", cell.a.evals.total(),
                  cell.b.evals.total());
    text += buf;
    text += (ratio_a ? fmt_double(*ratio_a) : std::string()) + ',';
    text += (ratio_b ? fmt_double(*ratio_b) : std::string()) + ',';
    text += fmt_double(cell.a.best_energy - cell.e_ref) + ',' +
            fmt_double(cell.b.best_energy - cell.e_ref) + '\n';
  }
  text += "# solver_a=" + options.solver_a + "\n";
  text += "# solver_b=" + options.solver_b + "\n";
  std::snprintf(buf, sizeof buf, "# seed=%" PRIu64 "\n", options.seed);
  text += buf;
  std::snprintf(buf, sizeof buf, "# wins_a=%d ties=%d wins_b=%d\n", wins_a, ties, wins_b);
  text += buf;
  text += "# planned_evals_a=" +
          (planned_a_known ? std::to_string(planned_a_sum) : std::string("unplanned")) +
          " planned_evals_b=" +
          (planned_b_known ? std::to_string(planned_b_sum) : std::string("unplanned")) + "\n";
  std::snprintf(buf, sizeof buf, "# actual_evals_a=%" PRIu64 " actual_evals_b=%" PRIu64 "\n",
                actual_a.total(), actual_b.total());
  text += buf;
  return text;
}

std::string fmt_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string spins_to_string(const SpinAssignment& z) {
  std::string text;
  text.reserve(z.size());
  for (std::int8_t s : z) text += s > 0 ? '+' : '-';
  return text;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (!file.good() && !file.eof()) throw std::invalid_argument("cannot read '" + path + "'");
  return buffer.str();
}

void emit_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp(target);
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::invalid_argument("cannot write '" + tmp.string() + "'");
    file << text;
    file.flush();
    if (!file.good()) throw std::invalid_argument("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace hubb::cli
