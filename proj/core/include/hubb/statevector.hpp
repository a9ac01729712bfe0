// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dense statevector backend. Qubit q is bit q of the amplitude index
// (qubit 0 = lowest-order bit), matching the spin/bit convention of
// SpinAssignment, so a sampled basis index decodes directly into spins.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hubb/cd.hpp"
#include "hubb/hubo.hpp"
#include "hubb/pauli.hpp"
#include "hubb/rng.hpp"

namespace hubb {

// 2^24 complex doubles (256 MiB) is the desk-scale ceiling.
inline constexpr int kMaxStateQubits = 24;

class StateVector {
 public:
  // |0...0> on n qubits.
  explicit StateVector(int n);

  // Adopts raw amplitudes (size must be 2^n). Normalization is the caller's
  // responsibility; sampling rejects states whose norm has drifted.
  StateVector(int n, std::vector<std::complex<double>> amplitudes);

  // Product state with per-qubit amplitudes (cos(theta/2), sin(theta/2)),
  // i.e. Ry(theta_q)|0> on every qubit.
  static StateVector prepare(int n, const std::vector<double>& prep_angles);

  int n() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
  std::complex<double> amplitude(std::uint64_t basis) const { return amp_[basis]; }

  // exp(-i(theta/2) Y_q).
  void apply_ry(int qubit, double theta);
  // exp(-i(angle/2) P) = cos(angle/2) I - i sin(angle/2) P, pairwise in place.
  void apply_pauli_rotation(const PauliString& string, double angle);

  double norm() const;
  // <psi| H_f |psi> for the (diagonal) problem Hamiltonian.
  double energy_expectation(const HuboProblem& problem) const;
  // <sigma^z_q> for every qubit.
  std::vector<double> z_expectations() const;

  // Inverse-CDF measurement of n_shots basis indices from |amplitudes|^2.
  std::vector<std::uint64_t> sample_indices(int n_shots, Rng& rng) const;
  // Measurement converted to spins with exact energies attached.
  SampleSet sample(const HuboProblem& problem, int n_shots, Rng& rng) const;

 private:
  int n_;
  std::vector<std::complex<double>> amp_;
};

// Runs a CdCircuit from |0...0>: preparation layer, then every rotation in
// list order.
StateVector simulate_circuit(const CdCircuit& circuit);

}  // namespace hubb
