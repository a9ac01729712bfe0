// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubb/hubo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "hubb/rng.hpp"

namespace hubb {

using nlohmann::json;

SpinAssignment spins_from_index(std::uint64_t index, int n) {
  if (n < 0 || n > 64) throw std::invalid_argument("spins_from_index: n out of range");
  SpinAssignment z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) z[i] = ((index >> i) & 1u) ? -1 : +1;
  return z;
}

std::uint64_t spin_to_index(const SpinAssignment& z) {
  if (z.size() > 64) throw std::invalid_argument("spin_to_index: more than 64 spins");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < 0) idx |= (1ull << i);
  return idx;
}

bool spin_less(const SpinAssignment& a, const SpinAssignment& b) {
  if (a.size() != b.size()) throw std::invalid_argument("spin_less: length mismatch");
  for (std::size_t i = a.size(); i-- > 0;) {
    const int ba = a[i] < 0, bb = b[i] < 0;
    if (ba != bb) return ba < bb;
  }
  return false;
}

namespace {

void check_index(int idx, int n, const char* what) {
  if (idx < 0 || idx >= n)
    throw std::invalid_argument(std::string(what) + ": index out of range [0, n)");
}

}  // namespace

HuboProblem::HuboProblem(int n, std::vector<LinearTerm> linear, std::vector<PairTerm> quadratic,
                         std::vector<TripleTerm> cubic)
    : n_(n), linear_(std::move(linear)), quadratic_(std::move(quadratic)), cubic_(std::move(cubic)) {
  if (n_ < 0) throw std::invalid_argument("HuboProblem: negative n");

  for (const auto& t : linear_) check_index(t.i, n_, "linear term");
  for (const auto& t : quadratic_) {
    check_index(t.i, n_, "pair term");
    check_index(t.j, n_, "pair term");
    if (!(t.i < t.j)) throw std::invalid_argument("pair term: indices must be strictly increasing");
  }
  for (const auto& t : cubic_) {
    check_index(t.i, n_, "triple term");
    check_index(t.j, n_, "triple term");
    check_index(t.k, n_, "triple term");
    if (!(t.i < t.j && t.j < t.k))
      throw std::invalid_argument("triple term: indices must be strictly increasing");
  }

  std::sort(linear_.begin(), linear_.end(), [](auto& a, auto& b) { return a.i < b.i; });
  std::sort(quadratic_.begin(), quadratic_.end(),
            [](auto& a, auto& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  std::sort(cubic_.begin(), cubic_.end(), [](auto& a, auto& b) {
    return std::array{a.i, a.j, a.k} < std::array{b.i, b.j, b.k};
  });

  for (std::size_t i = 1; i < linear_.size(); ++i)
    if (linear_[i].i == linear_[i - 1].i) throw std::invalid_argument("duplicate linear key");
  for (std::size_t i = 1; i < quadratic_.size(); ++i)
    if (quadratic_[i].i == quadratic_[i - 1].i && quadratic_[i].j == quadratic_[i - 1].j)
      throw std::invalid_argument("duplicate pair key");
  for (std::size_t i = 1; i < cubic_.size(); ++i)
    if (cubic_[i].i == cubic_[i - 1].i && cubic_[i].j == cubic_[i - 1].j &&
        cubic_[i].k == cubic_[i - 1].k)
      throw std::invalid_argument("duplicate triple key");

  // Canonical sparse form: no explicit zeros.
  std::erase_if(linear_, [](const LinearTerm& t) { return t.c == 0.0; });
  std::erase_if(quadratic_, [](const PairTerm& t) { return t.c == 0.0; });
  std::erase_if(cubic_, [](const TripleTerm& t) { return t.c == 0.0; });

  field_.assign(static_cast<std::size_t>(n_), 0.0);
  for (const auto& t : linear_) field_[t.i] = t.c;
  pair_adj_.assign(static_cast<std::size_t>(n_), {});
  for (std::size_t idx = 0; idx < quadratic_.size(); ++idx) {
    pair_adj_[quadratic_[idx].i].push_back(static_cast<int>(idx));
    pair_adj_[quadratic_[idx].j].push_back(static_cast<int>(idx));
  }
  triple_adj_.assign(static_cast<std::size_t>(n_), {});
  for (std::size_t idx = 0; idx < cubic_.size(); ++idx) {
    triple_adj_[cubic_[idx].i].push_back(static_cast<int>(idx));
    triple_adj_[cubic_[idx].j].push_back(static_cast<int>(idx));
    triple_adj_[cubic_[idx].k].push_back(static_cast<int>(idx));
  }
}

void HuboProblem::check_assignment(const SpinAssignment& z) const {
  if (static_cast<int>(z.size()) != n_)
    throw std::invalid_argument("assignment length does not match n");
}

double HuboProblem::energy(const SpinAssignment& z) const {
  check_assignment(z);
  double e = 0.0;
  for (const auto& t : linear_) e += t.c * z[t.i];
  for (const auto& t : quadratic_) e += t.c * z[t.i] * z[t.j];
  for (const auto& t : cubic_) e += t.c * z[t.i] * z[t.j] * z[t.k];
  return e;
}

EnergyByOrder HuboProblem::energy_by_order(const SpinAssignment& z) const {
  check_assignment(z);
  EnergyByOrder e;
  for (const auto& t : linear_) e.linear += t.c * z[t.i];
  for (const auto& t : quadratic_) e.quadratic += t.c * z[t.i] * z[t.j];
  for (const auto& t : cubic_) e.cubic += t.c * z[t.i] * z[t.j] * z[t.k];
  return e;
}

double HuboProblem::delta_energy(const SpinAssignment& z, int i) const {
  check_assignment(z);
  check_index(i, n_, "delta_energy");
  // Sum of all terms containing spin i, evaluated at z; flipping s_i negates
  // exactly these terms.
  double touching = field_[i] * z[i];
  for (int idx : pair_adj_[i]) {
    const auto& t = quadratic_[idx];
    touching += t.c * z[t.i] * z[t.j];
  }
  for (int idx : triple_adj_[i]) {
    const auto& t = cubic_[idx];
    touching += t.c * z[t.i] * z[t.j] * z[t.k];
  }
  return -2.0 * touching;
}

double HuboProblem::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& t : linear_) m = std::max(m, std::abs(t.c));
  for (const auto& t : quadratic_) m = std::max(m, std::abs(t.c));
  for (const auto& t : cubic_) m = std::max(m, std::abs(t.c));
  return m;
}

// ---------------------------------------------------------------------------
// Instance generation

namespace {

double draw_nonzero(Rng& rng, double lo, double hi) {
  double c = 0.0;
  do {
    c = lo + (hi - lo) * rng.next_double();
  } while (c == 0.0);
  return c;
}

}  // namespace

HuboProblem generate(const InstanceSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generate: n must be positive");
  if (!(spec.coeff_low < spec.coeff_high))
    throw std::invalid_argument("generate: empty coefficient range");

  const int n = spec.n;
  Rng rng(derive_seed(spec.seed, 0));

  std::vector<LinearTerm> lin;
  std::vector<PairTerm> quad;
  std::vector<TripleTerm> cub;

  lin.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) lin.push_back({i, draw_nonzero(rng, spec.coeff_low, spec.coeff_high)});

  if (spec.topology == Topology::kSparseChain) {
    for (int i = 0; i + 1 < n; ++i)
      quad.push_back({i, i + 1, draw_nonzero(rng, spec.coeff_low, spec.coeff_high)});
    for (int i = 0; i + 2 < n; ++i)
      cub.push_back({i, i + 1, i + 2, draw_nonzero(rng, spec.coeff_low, spec.coeff_high)});
  } else {
    const std::int64_t max_pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
    const std::int64_t max_triples = static_cast<std::int64_t>(n) * (n - 1) * (n - 2) / 6;
    if (spec.n2 < 0 || spec.n2 > max_pairs)
      throw std::invalid_argument("generate: n2 out of range");
    if (spec.n3 < 0 || spec.n3 > max_triples)
      throw std::invalid_argument("generate: n3 out of range");

    // Uniform without replacement by rejection; coefficients are then drawn
    // in canonical key order so documents are reproducible and tidy.
    std::set<std::pair<int, int>> pairs;
    while (static_cast<int>(pairs.size()) < spec.n2) {
      int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      if (i == j) continue;
      pairs.insert({std::min(i, j), std::max(i, j)});
    }
    std::set<std::array<int, 3>> triples;
    while (static_cast<int>(triples.size()) < spec.n3) {
      int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      int k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      if (i == j || i == k || j == k) continue;
      std::array<int, 3> t{i, j, k};
      std::sort(t.begin(), t.end());
      triples.insert(t);
    }
    for (const auto& [i, j] : pairs)
      quad.push_back({i, j, draw_nonzero(rng, spec.coeff_low, spec.coeff_high)});
    for (const auto& t : triples)
      cub.push_back({t[0], t[1], t[2], draw_nonzero(rng, spec.coeff_low, spec.coeff_high)});
  }

  return HuboProblem(n, std::move(lin), std::move(quad), std::move(cub));
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize(const HuboProblem& problem, const InstanceMetadata& meta) {
  json j;
  j["n"] = problem.n();
  j["linear"] = json::array();
  for (const auto& t : problem.linear()) j["linear"].push_back({t.i, t.c});
  j["quadratic"] = json::array();
  for (const auto& t : problem.quadratic()) j["quadratic"].push_back({t.i, t.j, t.c});
  j["cubic"] = json::array();
  for (const auto& t : problem.cubic()) j["cubic"].push_back({t.i, t.j, t.k, t.c});
  if (meta.seed) j["seed"] = *meta.seed;
  if (!meta.topology.empty()) j["topology"] = meta.topology;
  if (!meta.distribution.empty()) j["distribution"] = meta.distribution;
  return j.dump(2) + "\n";
}

namespace {

int parse_index(const json& v, int n, const char* what) {
  if (!v.is_number_integer()) throw std::invalid_argument(std::string(what) + ": index not an integer");
  const std::int64_t idx = v.get<std::int64_t>();
  if (idx < 0 || idx >= n) throw std::invalid_argument(std::string(what) + ": index out of range");
  return static_cast<int>(idx);
}

double parse_coeff(const json& v, const char* what) {
  if (!v.is_number()) throw std::invalid_argument(std::string(what) + ": coefficient not a number");
  return v.get<double>();
}

// Canonicalizes one entry's indices and folds it into acc. Entries that are
// permutations of each other merge by summation; an exactly repeated index
// tuple is a duplicate key and therefore an error.
template <std::size_t Arity>
void fold_entry(const json& entry, int n, const char* what,
                std::map<std::array<int, Arity>, std::pair<double, std::set<std::array<int, Arity>>>>& acc) {
  if (!entry.is_array() || entry.size() != Arity + 1)
    throw std::invalid_argument(std::string(what) + ": entry must be [indices..., coefficient]");
  std::array<int, Arity> original;
  for (std::size_t a = 0; a < Arity; ++a) original[a] = parse_index(entry[a], n, what);
  const double c = parse_coeff(entry[Arity], what);

  std::array<int, Arity> key = original;
  std::sort(key.begin(), key.end());
  for (std::size_t a = 1; a < Arity; ++a)
    if (key[a] == key[a - 1])
      throw std::invalid_argument(std::string(what) + ": repeated index within one term");

  auto& [sum, seen] = acc[key];
  if (!seen.insert(original).second)
    throw std::invalid_argument(std::string(what) + ": duplicate key");
  sum += c;
}

}  // namespace

ParsedInstance parse_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("instance: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("instance: document must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("instance: missing integer field n");
  const std::int64_t n64 = j["n"].get<std::int64_t>();
  if (n64 < 0 || n64 > (1 << 20)) throw std::invalid_argument("instance: n out of range");
  const int n = static_cast<int>(n64);

  std::map<std::array<int, 1>, std::pair<double, std::set<std::array<int, 1>>>> lin_acc;
  std::map<std::array<int, 2>, std::pair<double, std::set<std::array<int, 2>>>> quad_acc;
  std::map<std::array<int, 3>, std::pair<double, std::set<std::array<int, 3>>>> cub_acc;

  if (j.contains("linear"))
    for (const auto& e : j["linear"]) fold_entry<1>(e, n, "linear", lin_acc);
  if (j.contains("quadratic"))
    for (const auto& e : j["quadratic"]) fold_entry<2>(e, n, "quadratic", quad_acc);
  if (j.contains("cubic"))
    for (const auto& e : j["cubic"]) fold_entry<3>(e, n, "cubic", cub_acc);

  std::vector<LinearTerm> lin;
  for (const auto& [key, v] : lin_acc) lin.push_back({key[0], v.first});
  std::vector<PairTerm> quad;
  for (const auto& [key, v] : quad_acc) quad.push_back({key[0], key[1], v.first});
  std::vector<TripleTerm> cub;
  for (const auto& [key, v] : cub_acc) cub.push_back({key[0], key[1], key[2], v.first});

  ParsedInstance out{HuboProblem(n, std::move(lin), std::move(quad), std::move(cub)), {}};
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw std::invalid_argument("instance: seed must be an integer");
    out.meta.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("topology") && j["topology"].is_string())
    out.meta.topology = j["topology"].get<std::string>();
  if (j.contains("distribution") && j["distribution"].is_string())
    out.meta.distribution = j["distribution"].get<std::string>();
  return out;
}

// ---------------------------------------------------------------------------
// Spin fixing

ReducedProblem fix_spins(const HuboProblem& problem, const std::vector<SpinFix>& fixes) {
  const int n = problem.n();
  std::vector<int> fixed(static_cast<std::size_t>(n), 0);  // 0 = free, else +1/-1
  for (const auto& f : fixes) {
    check_index(f.index, n, "fix_spins");
    if (f.sign != 1 && f.sign != -1) throw std::invalid_argument("fix_spins: sign must be +1/-1");
    if (fixed[f.index] != 0) throw std::invalid_argument("fix_spins: index fixed twice");
    fixed[f.index] = f.sign;
  }

  ReducedProblem out;
  std::vector<int> full_to_free(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (fixed[i] == 0) {
      full_to_free[i] = static_cast<int>(out.free_to_full.size());
      out.free_to_full.push_back(i);
    }
  }

  // Substitution can merge terms (e.g. two triples collapsing onto the same
  // pair), so accumulate in maps before rebuilding.
  std::map<int, double> lin;
  std::map<std::pair<int, int>, double> quad;
  std::map<std::array<int, 3>, double> cub;

  for (const auto& t : problem.linear()) {
    if (fixed[t.i]) out.offset += t.c * fixed[t.i];
    else lin[t.i] += t.c;
  }
  for (const auto& t : problem.quadratic()) {
    const int si = fixed[t.i], sj = fixed[t.j];
    if (si && sj) out.offset += t.c * si * sj;
    else if (si) lin[t.j] += t.c * si;
    else if (sj) lin[t.i] += t.c * sj;
    else quad[{t.i, t.j}] += t.c;
  }
  for (const auto& t : problem.cubic()) {
    const int si = fixed[t.i], sj = fixed[t.j], sk = fixed[t.k];
    const int nfixed = (si != 0) + (sj != 0) + (sk != 0);
    if (nfixed == 3) out.offset += t.c * si * sj * sk;
    else if (nfixed == 2) {
      if (!si) lin[t.i] += t.c * sj * sk;
      else if (!sj) lin[t.j] += t.c * si * sk;
      else lin[t.k] += t.c * si * sj;
    } else if (nfixed == 1) {
      if (si) quad[{t.j, t.k}] += t.c * si;
      else if (sj) quad[{t.i, t.k}] += t.c * sj;
      else quad[{t.i, t.j}] += t.c * sk;
    } else {
      cub[{t.i, t.j, t.k}] += t.c;
    }
  }

  std::vector<LinearTerm> lin_v;
  for (const auto& [i, c] : lin) lin_v.push_back({full_to_free[i], c});
  std::vector<PairTerm> quad_v;
  for (const auto& [key, c] : quad) quad_v.push_back({full_to_free[key.first], full_to_free[key.second], c});
  std::vector<TripleTerm> cub_v;
  for (const auto& [key, c] : cub)
    cub_v.push_back({full_to_free[key[0]], full_to_free[key[1]], full_to_free[key[2]], c});

  out.problem = HuboProblem(static_cast<int>(out.free_to_full.size()), std::move(lin_v),
                            std::move(quad_v), std::move(cub_v));
  return out;
}

// ---------------------------------------------------------------------------
// SampleSet

SampleSet SampleSet::from_counts(const HuboProblem& problem,
                                 std::vector<std::pair<SpinAssignment, std::uint64_t>> counts) {
  std::map<SpinAssignment, std::uint64_t> merged;
  std::uint64_t total = 0;
  for (auto& [z, c] : counts) {
    if (c == 0) continue;
    merged[std::move(z)] += c;
    total += c;
  }
  SampleSet out;
  out.total_shots = total;
  out.records.reserve(merged.size());
  for (auto& [z, c] : merged) {
    const double e = problem.energy(z);
    out.records.push_back({z, e, c});
  }
  std::sort(out.records.begin(), out.records.end(), [](const SampleRecord& a, const SampleRecord& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return spin_less(a.z, b.z);
  });
  return out;
}

const SampleRecord& SampleSet::best() const {
  if (records.empty()) throw std::logic_error("SampleSet::best: empty sample set");
  return records.front();
}

double SampleSet::mean_energy() const {
  if (total_shots == 0) throw std::logic_error("SampleSet::mean_energy: empty sample set");
  double acc = 0.0;
  for (const auto& r : records) acc += r.energy * static_cast<double>(r.count);
  return acc / static_cast<double>(total_shots);
}

}  // namespace hubb
