// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubb/quadratize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "hubb/errors.hpp"

namespace hubb {

using json = nlohmann::json;

BitAssignment bits_from_index(std::uint64_t index, int m) {
  BitAssignment x(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(i)] = (index >> i) & 1;
  return x;
}

SpinAssignment spins_from_bits(const BitAssignment& x) {
  SpinAssignment z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = static_cast<std::int8_t>(1 - 2 * x[i]);
  return z;
}

BitAssignment bits_from_spins(const SpinAssignment& z) {
  BitAssignment x(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i] == 1 ? 0 : 1;
  return x;
}

QuboProblem::QuboProblem(int m, std::vector<LinearTerm> linear, std::vector<PairTerm> quadratic,
                         double offset)
    : m_(m), offset_(offset) {
  if (m < 0) throw std::invalid_argument("qubo: m must be nonnegative");
  std::set<int> lin_keys;
  for (const auto& t : linear) {
    if (t.i < 0 || t.i >= m) throw std::invalid_argument("qubo: linear index out of range");
    if (!lin_keys.insert(t.i).second) throw std::invalid_argument("qubo: duplicate linear key");
  }
  std::set<std::pair<int, int>> quad_keys;
  for (const auto& t : quadratic) {
    if (t.i < 0 || t.j >= m) throw std::invalid_argument("qubo: pair index out of range");
    if (t.i >= t.j) throw std::invalid_argument("qubo: pair indices must be increasing");
    if (!quad_keys.insert({t.i, t.j}).second)
      throw std::invalid_argument("qubo: duplicate pair key");
  }
  // Canonical sparse form: no explicit zeros.
  for (auto& t : linear)
    if (t.c != 0.0) linear_.push_back(t);
  for (auto& t : quadratic)
    if (t.c != 0.0) quadratic_.push_back(t);
}

double QuboProblem::energy(const BitAssignment& x) const {
  if (static_cast<int>(x.size()) != m_)
    throw std::invalid_argument("qubo: assignment length does not match m");
  for (const auto b : x)
    if (b > 1) throw std::invalid_argument("qubo: assignment entries must be 0 or 1");
  double e = offset_;
  for (const auto& t : linear_)
    if (x[static_cast<std::size_t>(t.i)]) e += t.c;
  for (const auto& t : quadratic_)
    if (x[static_cast<std::size_t>(t.i)] && x[static_cast<std::size_t>(t.j)]) e += t.c;
  return e;
}

namespace {

// HUBO over binaries after s = 1 - 2x, before any substitution.
struct BinaryExpansion {
  std::map<int, double> linear;
  std::map<std::pair<int, int>, double> quadratic;
  std::map<std::array<int, 3>, double> cubic;
  double offset = 0.0;
};

BinaryExpansion expand_to_binary(const HuboProblem& problem) {
  BinaryExpansion e;
  for (const auto& t : problem.linear()) {
    e.offset += t.c;
    e.linear[t.i] += -2.0 * t.c;
  }
  for (const auto& t : problem.quadratic()) {
    e.offset += t.c;
    e.linear[t.i] += -2.0 * t.c;
    e.linear[t.j] += -2.0 * t.c;
    e.quadratic[{t.i, t.j}] += 4.0 * t.c;
  }
  for (const auto& t : problem.cubic()) {
    e.offset += t.c;
    e.linear[t.i] += -2.0 * t.c;
    e.linear[t.j] += -2.0 * t.c;
    e.linear[t.k] += -2.0 * t.c;
    e.quadratic[{t.i, t.j}] += 4.0 * t.c;
    e.quadratic[{t.i, t.k}] += 4.0 * t.c;
    e.quadratic[{t.j, t.k}] += 4.0 * t.c;
    e.cubic[{t.i, t.j, t.k}] += -8.0 * t.c;
  }
  return e;
}

// Substitutes x_i x_j -> y in every remaining cubic monomial containing the
// pair; each cube has exactly one substitution (degree drops to 2).
void substitute_pair(BinaryExpansion& e, int i, int j, int y) {
  for (auto it = e.cubic.begin(); it != e.cubic.end();) {
    const auto& [a, b, c] = it->first;
    const bool has_i = a == i || b == i || c == i;
    const bool has_j = a == j || b == j || c == j;
    if (has_i && has_j) {
      const int third = a + b + c - i - j;
      e.quadratic[{std::min(third, y), std::max(third, y)}] += it->second;
      it = e.cubic.erase(it);
    } else {
      ++it;
    }
  }
}

// Greedy pair selection over the not-yet-linearized cubes: most frequent
// pair first, lexicographically smallest on ties.
std::vector<AuxVariable> linearize_greedy(BinaryExpansion& e, int n) {
  std::vector<AuxVariable> aux;
  while (!e.cubic.empty()) {
    std::map<std::pair<int, int>, int> freq;
    for (const auto& [key, c] : e.cubic) {
      (void)c;
      const auto [a, b, k] = key;
      ++freq[{a, b}];
      ++freq[{a, k}];
      ++freq[{b, k}];
    }
    std::pair<int, int> best = freq.begin()->first;
    int best_count = freq.begin()->second;
    for (const auto& [pair, count] : freq)
      if (count > best_count) {
        best = pair;
        best_count = count;
      }
    const int y = n + static_cast<int>(aux.size());
    substitute_pair(e, best.first, best.second, y);
    aux.push_back({y, best.first, best.second});
  }
  return aux;
}

// Applies the map's substitutions in aux order; throws when they do not
// linearize every cube or are structurally inconsistent.
BinaryExpansion expand_with_map(const HuboProblem& problem, const ReductionMap& map) {
  const int n = problem.n();
  BinaryExpansion e = expand_to_binary(problem);
  std::set<std::pair<int, int>> seen_pairs;
  for (std::size_t a = 0; a < map.aux.size(); ++a) {
    const auto& v = map.aux[a];
    if (v.aux != n + static_cast<int>(a))
      throw std::invalid_argument("reduction map: auxiliary indices must be consecutive from n");
    if (v.i < 0 || v.j >= n || v.i >= v.j)
      throw std::invalid_argument("reduction map: invalid original pair");
    if (!seen_pairs.insert({v.i, v.j}).second)
      throw std::invalid_argument("reduction map: repeated pair");
    substitute_pair(e, v.i, v.j, v.aux);
  }
  if (!e.cubic.empty())
    throw std::invalid_argument("reduction map: substitutions do not linearize the problem");
  return e;
}

QuboProblem build_qubo(const BinaryExpansion& e, const std::vector<AuxVariable>& aux, int n,
                       double penalty) {
  auto linear = e.linear;
  auto quadratic = e.quadratic;
  for (const auto& v : aux) {
    quadratic[{v.i, v.j}] += penalty;
    quadratic[{v.i, v.aux}] += -2.0 * penalty;
    quadratic[{v.j, v.aux}] += -2.0 * penalty;
    linear[v.aux] += 3.0 * penalty;
  }
  std::vector<LinearTerm> lin;
  for (const auto& [i, c] : linear) lin.push_back({i, c});
  std::vector<PairTerm> quad;
  for (const auto& [key, c] : quadratic) quad.push_back({key.first, key.second, c});
  return QuboProblem(n + static_cast<int>(aux.size()), std::move(lin), std::move(quad),
                     e.offset);
}

}  // namespace

std::pair<QuboProblem, ReductionMap> hubo_to_qubo(const HuboProblem& problem, double penalty) {
  if (!(penalty > 0.0)) throw std::invalid_argument("quadratize: penalty must be positive");
  BinaryExpansion e = expand_to_binary(problem);
  ReductionMap map{linearize_greedy(e, problem.n()), penalty};
  return {build_qubo(e, map.aux, problem.n(), penalty), map};
}

namespace {

constexpr int kMaxVerifyOriginal = 14;
constexpr int kMaxVerifyTotal = 22;

// Index-based evaluation (variable i = bit i) so exhaustive scans do not
// allocate per assignment.
double qubo_energy_at(const QuboProblem& qubo, std::uint64_t x) {
  double e = qubo.offset();
  for (const auto& t : qubo.linear())
    if ((x >> t.i) & 1) e += t.c;
  for (const auto& t : qubo.quadratic())
    if (((x >> t.i) & 1) && ((x >> t.j) & 1)) e += t.c;
  return e;
}

// Violation weight of the product constraints: 0 iff consistent, and the
// penalty contributes exactly M * weight.
int violation_weight(const std::vector<AuxVariable>& aux, std::uint64_t x) {
  int w = 0;
  for (const auto& v : aux) {
    const int xi = (x >> v.i) & 1;
    const int xj = (x >> v.j) & 1;
    const int y = (x >> v.aux) & 1;
    w += xi * xj - 2 * xi * y - 2 * xj * y + 3 * y;
  }
  return w;
}

}  // namespace

ReductionReport verify_reduction(const HuboProblem& problem, const QuboProblem& qubo,
                                 const ReductionMap& map) {
  const int n = problem.n();
  const int m = qubo.m();
  if (n > kMaxVerifyOriginal || m > kMaxVerifyTotal)
    throw CapExceeded("verify_reduction: instance too large for exhaustive verification");
  if (!(map.penalty > 0.0)) throw std::invalid_argument("verify_reduction: penalty must be positive");
  if (m != n + static_cast<int>(map.aux.size()))
    throw std::invalid_argument("verify_reduction: variable count does not match the map");
  const BinaryExpansion base = expand_with_map(problem, map);

  const std::uint64_t hubo_dim = std::uint64_t{1} << n;
  const std::uint64_t qubo_dim = std::uint64_t{1} << m;

  ReductionReport report;

  // HUBO side: exact minimum and its attainment set.
  std::vector<double> hubo_energy(hubo_dim);
  report.hubo_minimum = std::numeric_limits<double>::infinity();
  for (std::uint64_t b = 0; b < hubo_dim; ++b) {
    hubo_energy[b] = problem.energy(spins_from_index(b, n));
    report.hubo_minimum = std::min(report.hubo_minimum, hubo_energy[b]);
  }

  // QUBO side, as handed in: minimum, then minimizer properties.
  report.qubo_minimum = std::numeric_limits<double>::infinity();
  for (std::uint64_t x = 0; x < qubo_dim; ++x)
    report.qubo_minimum = std::min(report.qubo_minimum, qubo_energy_at(qubo, x));
  report.minimizers_consistent = true;
  report.projections_optimal = true;
  const std::uint64_t original_mask = hubo_dim - 1;
  for (std::uint64_t x = 0; x < qubo_dim; ++x) {
    if (qubo_energy_at(qubo, x) != report.qubo_minimum) continue;
    if (violation_weight(map.aux, x) != 0) report.minimizers_consistent = false;
    if (hubo_energy[x & original_mask] != report.hubo_minimum) report.projections_optimal = false;
  }
  report.minima_match = report.qubo_minimum == report.hubo_minimum;

  if (map.aux.empty()) {
    report.minimal_penalty = 0.0;
    return report;
  }

  // Penalty threshold search on energy = base(x) + M * violations(x); the
  // decomposition is exact for the canonical construction, and the passing
  // set is upward closed in M (violations only gain energy).
  std::vector<double> base_energy(qubo_dim);
  std::vector<std::uint8_t> violations(qubo_dim);
  std::vector<std::uint8_t> projection_ok(qubo_dim);
  const QuboProblem unpenalized = build_qubo(base, {}, m, 0.0);
  for (std::uint64_t x = 0; x < qubo_dim; ++x) {
    base_energy[x] = qubo_energy_at(unpenalized, x);
    const int w = violation_weight(map.aux, x);
    violations[x] = static_cast<std::uint8_t>(w);
    projection_ok[x] = hubo_energy[x & original_mask] == report.hubo_minimum;
  }
  const auto passes = [&](double penalty) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::uint64_t x = 0; x < qubo_dim; ++x)
      lowest = std::min(lowest, base_energy[x] + penalty * violations[x]);
    if (lowest != report.hubo_minimum) return false;
    for (std::uint64_t x = 0; x < qubo_dim; ++x) {
      if (base_energy[x] + penalty * violations[x] != lowest) continue;
      if (violations[x] != 0 || !projection_ok[x]) return false;
    }
    return true;
  };

  double hi = std::max(map.penalty, 1.0);
  int doublings = 0;
  while (!passes(hi) && doublings++ < 40) hi *= 2.0;
  if (!passes(hi)) {
    report.minimal_penalty = std::numeric_limits<double>::infinity();
    return report;
  }
  double lo = 0.0;
  for (int it = 0; it < 60 && hi - lo > 1e-9 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? hi : lo) = mid;
  }
  report.minimal_penalty = hi;
  return report;
}

std::string serialize_qubo(const QuboProblem& qubo, const ReductionMap& map) {
  json j;
  j["m"] = qubo.m();
  j["linear"] = json::array();
  for (const auto& t : qubo.linear()) j["linear"].push_back({t.i, t.c});
  j["quadratic"] = json::array();
  for (const auto& t : qubo.quadratic()) j["quadratic"].push_back({t.i, t.j, t.c});
  j["offset"] = qubo.offset();
  j["reduction"]["penalty"] = map.penalty;
  j["reduction"]["aux"] = json::array();
  for (const auto& v : map.aux) j["reduction"]["aux"].push_back({v.aux, v.i, v.j});
  return j.dump(2) + "\n";
}

namespace {

int parse_qubo_index(const json& v, int m, const char* what) {
  if (!v.is_number_integer())
    throw std::invalid_argument(std::string(what) + ": index not an integer");
  const std::int64_t idx = v.get<std::int64_t>();
  if (idx < 0 || idx >= m) throw std::invalid_argument(std::string(what) + ": index out of range");
  return static_cast<int>(idx);
}

double parse_qubo_number(const json& v, const char* what) {
  if (!v.is_number()) throw std::invalid_argument(std::string(what) + ": not a number");
  return v.get<double>();
}

}  // namespace

ParsedQubo parse_qubo(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("qubo: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("qubo: document must be an object");
  if (!j.contains("m") || !j["m"].is_number_integer())
    throw std::invalid_argument("qubo: missing integer field m");
  const std::int64_t m64 = j["m"].get<std::int64_t>();
  if (m64 < 0 || m64 > (1 << 20)) throw std::invalid_argument("qubo: m out of range");
  const int m = static_cast<int>(m64);

  // Same merge semantics as the instance parser: permuted pair entries fold
  // by summation, an exactly repeated key is an error.
  std::map<int, std::pair<double, bool>> lin_acc;
  std::map<std::pair<int, int>, std::pair<double, std::set<std::pair<int, int>>>> quad_acc;
  if (j.contains("linear"))
    for (const auto& e : j["linear"]) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("qubo linear: entry must be [i, c]");
      const int i = parse_qubo_index(e[0], m, "qubo linear");
      auto& [sum, seen] = lin_acc[i];
      if (seen) throw std::invalid_argument("qubo linear: duplicate key");
      seen = true;
      sum += parse_qubo_number(e[1], "qubo linear");
    }
  if (j.contains("quadratic"))
    for (const auto& e : j["quadratic"]) {
      if (!e.is_array() || e.size() != 3)
        throw std::invalid_argument("qubo quadratic: entry must be [i, j, c]");
      const int i = parse_qubo_index(e[0], m, "qubo quadratic");
      const int k = parse_qubo_index(e[1], m, "qubo quadratic");
      if (i == k) throw std::invalid_argument("qubo quadratic: repeated index within one term");
      auto& [sum, seen] = quad_acc[{std::min(i, k), std::max(i, k)}];
      if (!seen.insert({i, k}).second)
        throw std::invalid_argument("qubo quadratic: duplicate key");
      sum += parse_qubo_number(e[2], "qubo quadratic");
    }

  double offset = 0.0;
  if (j.contains("offset")) offset = parse_qubo_number(j["offset"], "qubo offset");

  std::vector<LinearTerm> lin;
  for (const auto& [i, v] : lin_acc) lin.push_back({i, v.first});
  std::vector<PairTerm> quad;
  for (const auto& [key, v] : quad_acc) quad.push_back({key.first, key.second, v.first});

  ParsedQubo out{QuboProblem(m, std::move(lin), std::move(quad), offset), {}};
  if (j.contains("reduction")) {
    const auto& r = j["reduction"];
    if (!r.is_object()) throw std::invalid_argument("qubo reduction: must be an object");
    if (r.contains("penalty")) out.map.penalty = parse_qubo_number(r["penalty"], "qubo penalty");
    std::set<int> seen_aux;
    if (r.contains("aux"))
      for (const auto& e : r["aux"]) {
        if (!e.is_array() || e.size() != 3)
          throw std::invalid_argument("qubo aux: entry must be [y, i, j]");
        AuxVariable v;
        v.aux = parse_qubo_index(e[0], m, "qubo aux");
        v.i = parse_qubo_index(e[1], m, "qubo aux");
        v.j = parse_qubo_index(e[2], m, "qubo aux");
        if (v.i > v.j) std::swap(v.i, v.j);
        if (v.i == v.j) throw std::invalid_argument("qubo aux: repeated index within one pair");
        if (!seen_aux.insert(v.aux).second)
          throw std::invalid_argument("qubo aux: duplicate auxiliary");
        out.map.aux.push_back(v);
      }
  }
  return out;
}

}  // namespace hubb
