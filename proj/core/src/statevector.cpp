// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubb/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hubb/errors.hpp"

namespace hubb {

namespace {

constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int checked_qubits(int n) {
  if (n < 1) throw std::invalid_argument("statevector: need at least one qubit");
  if (n > kMaxStateQubits) throw CapExceeded("statevector: qubit count exceeds cap 24");
  return n;
}

}  // namespace

StateVector::StateVector(int n) : n_(checked_qubits(n)), amp_(dim()) { amp_[0] = 1.0; }

StateVector::StateVector(int n, std::vector<std::complex<double>> amplitudes)
    : n_(checked_qubits(n)), amp_(std::move(amplitudes)) {
  if (amp_.size() != dim())
    throw std::invalid_argument("statevector: amplitude count must be 2^n");
}

StateVector StateVector::prepare(int n, const std::vector<double>& prep_angles) {
  if (static_cast<int>(prep_angles.size()) != n)
    throw std::invalid_argument("prepare: angle count does not match qubit count");
  StateVector psi(n);
  // Grow the product state one qubit at a time; qubit q lands on bit q.
  std::uint64_t filled = 1;
  for (int q = 0; q < n; ++q) {
    const double c = std::cos(prep_angles[static_cast<std::size_t>(q)] / 2);
    const double s = std::sin(prep_angles[static_cast<std::size_t>(q)] / 2);
    for (std::uint64_t b = 0; b < filled; ++b) {
      const std::complex<double> base = psi.amp_[b];
      psi.amp_[b] = c * base;
      psi.amp_[b | filled] = s * base;
    }
    filled <<= 1;
  }
  return psi;
}

void StateVector::apply_ry(int qubit, double theta) {
  if (qubit < 0 || qubit >= n_) throw std::invalid_argument("apply_ry: qubit out of range");
  apply_pauli_rotation(PauliString::single(n_, qubit, 'Y'), theta);
}

void StateVector::apply_pauli_rotation(const PauliString& string, double angle) {
  if (string.num_qubits() != n_)
    throw std::invalid_argument("apply_pauli_rotation: string length does not match state");
  // n <= 24, so the packed string always fits one word.
  const std::uint64_t x = string.x_words()[0];
  const std::uint64_t z = string.z_words()[0];
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  // P|b> = base * (-1)^{|b & z|} |b ^ x| with base = i^{|x & z|}.
  const std::complex<double> base = kIPow[std::popcount(x & z) & 3];
  const std::complex<double> mis{0.0, -s};  // -i sin(angle/2)
  const std::uint64_t d = dim();
  if (x == 0) {
    for (std::uint64_t b = 0; b < d; ++b) {
      const double sign = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
      amp_[b] *= c + mis * sign;
    }
    return;
  }
  const std::uint64_t pivot = x & (~x + 1);
  for (std::uint64_t b = 0; b < d; ++b) {
    if (b & pivot) continue;  // each (b, b^x) pair handled once, from its pivot=0 side
    const std::uint64_t b2 = b ^ x;
    const std::complex<double> pb = base * ((std::popcount(b & z) & 1) ? -1.0 : 1.0);
    const std::complex<double> pb2 = base * ((std::popcount(b2 & z) & 1) ? -1.0 : 1.0);
    const std::complex<double> a0 = amp_[b], a1 = amp_[b2];
    amp_[b] = c * a0 + mis * (pb2 * a1);
    amp_[b2] = c * a1 + mis * (pb * a0);
  }
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amp_) acc += std::norm(a);
  return std::sqrt(acc);
}

double StateVector::energy_expectation(const HuboProblem& problem) const {
  if (problem.n() != n_)
    throw std::invalid_argument("energy_expectation: problem size does not match state");
  double acc = 0.0;
  for (std::uint64_t b = 0; b < dim(); ++b) {
    const double w = std::norm(amp_[b]);
    if (w > 0.0) acc += w * problem.energy(spins_from_index(b, n_));
  }
  return acc;
}

std::vector<double> StateVector::z_expectations() const {
  std::vector<double> ez(static_cast<std::size_t>(n_), 0.0);
  for (std::uint64_t b = 0; b < dim(); ++b) {
    const double w = std::norm(amp_[b]);
    if (w == 0.0) continue;
    for (int q = 0; q < n_; ++q)
      ez[static_cast<std::size_t>(q)] += (b >> q) & 1 ? -w : w;
  }
  return ez;
}

std::vector<std::uint64_t> StateVector::sample_indices(int n_shots, Rng& rng) const {
  if (n_shots < 1) throw std::invalid_argument("sample: need at least one shot");
  std::vector<double> cum(amp_.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < amp_.size(); ++b) {
    acc += std::norm(amp_[b]);
    cum[b] = acc;
  }
  if (std::abs(acc - 1.0) > 1e-8)
    throw std::runtime_error("sample: state norm deviates from 1 beyond tolerance");
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n_shots));
  for (auto& shot : out) {
    const double u = rng.next_double() * acc;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    shot = it == cum.end() ? cum.size() - 1
                           : static_cast<std::uint64_t>(it - cum.begin());
  }
  return out;
}

SampleSet StateVector::sample(const HuboProblem& problem, int n_shots, Rng& rng) const {
  if (problem.n() != n_) throw std::invalid_argument("sample: problem size does not match state");
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto b : sample_indices(n_shots, rng)) ++counts[b];
  std::vector<std::pair<SpinAssignment, std::uint64_t>> pairs;
  pairs.reserve(counts.size());
  for (const auto& [b, c] : counts) pairs.emplace_back(spins_from_index(b, n_), c);
  return SampleSet::from_counts(problem, std::move(pairs));
}

StateVector simulate_circuit(const CdCircuit& circuit) {
  StateVector psi = StateVector::prepare(static_cast<int>(circuit.prep_angles.size()),
                                         circuit.prep_angles);
  for (const auto& r : circuit.rotations) psi.apply_pauli_rotation(r.string, r.angle);
  return psi;
}

}  // namespace hubb
