// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Counterdiabatic circuit construction.
//
// The annealing path is H_ad(lam) = (1-lam) H_i + lam H_f with the bias-field
// driver H_i = sum_j (hx_j X_j + hb_j Z_j) and H_f the problem Hamiltonian.
// The first-order variational gauge potential is A = i*alpha1(lam)*O1 with
// O1 = [H_ad, d_lam H_ad] and alpha1 minimizing the action
// S(alpha) = Tr[G^2]/2^n, G = d_lam H_ad - i[H_ad, A]. Writing O2 = [H_ad, O1]
// that quadratic has the closed-form minimizer
//
//   alpha1 = - Re<d_lam H_ad, O2> / <O2, O2>     (normalized HS inner product)
//
// The circuit is the counterdiabatic-only evolution compressed into one
// effective product step: a product-state preparation that diagonalizes the
// driver, followed by one rotation exp(-i(theta_P/2)P) per string P of i*O1
// with
//
//   theta_P = 2 * c_P * Int_0^T lam_dot(t) * alpha1(lam(t)) dt,
//
// c_P being P's (real) coefficient in i*O1. Because H_i and H_f are both
// lam-independent, O1 = [H_i, H_f] is constant along the path and only alpha1
// varies, so the integral is shared by every rotation.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hubb/hubo.hpp"
#include "hubb/pauli.hpp"

namespace hubb {

// Interpolation schedule lam(t) = sin^2((pi/2) sin^2(pi t / 2T)): flat at
// both ends (lam_dot(0) = lam_dot(T) = 0), lam(0)=0, lam(T)=1.
struct Schedule {
  double total_time = 1.0;

  double lambda(double t) const;
  // Analytic derivative: (pi^2/4T) sin(pi sin^2(pi t/2T)) sin(pi t/T).
  double lambda_dot(double t) const;
};

// Transverse/longitudinal fields of the driver Hamiltonian.
struct DriverConfig {
  std::vector<double> hx;
  std::vector<double> hb;

  static DriverConfig uniform(int n, double hx_value = -1.0);
};

PauliSum final_hamiltonian(const HuboProblem& problem);
PauliSum driver_hamiltonian(const DriverConfig& driver);
PauliSum build_h_ad(const HuboProblem& problem, const DriverConfig& driver, double lam);

// Closed-form variational coefficient at interpolation point lam in [0,1].
// Returns nullopt when the action is flat (<O2,O2> = 0) and the coefficient
// is undefined; callers treat the counterdiabatic term as zero there.
std::optional<double> alpha1(const HuboProblem& problem, const DriverConfig& driver, double lam);

// Precomputes the lam-structure of alpha1 once: O2(lam) is linear in lam, so
// the action reduces to five scalars and evaluation at a quadrature node is
// O(1). Agrees with alpha1() to floating-point accuracy.
class Alpha1Evaluator {
 public:
  Alpha1Evaluator(const HuboProblem& problem, const DriverConfig& driver);

  std::optional<double> at(double lam) const;

  // i*[H_i, H_f]: the Hermitian generator whose strings become rotations.
  const PauliSum& cd_generator() const { return cd_generator_; }

 private:
  PauliSum cd_generator_;
  double u1_ = 0.0, u2_ = 0.0;           // numerator at lam=0 / lam=1
  double v11_ = 0.0, v12x2_ = 0.0, v22_ = 0.0;  // denominator quadratic
};

struct PauliRotation {
  PauliString string;
  double angle;
};

struct CdCircuit {
  // Per-qubit preparation angles; Ry(theta_i)|0> is the ground state of
  // hx_i X + hb_i Z.
  std::vector<double> prep_angles;
  // Rotations exp(-i(angle/2)*string), applied in list order; the list is in
  // canonical string order.
  std::vector<PauliRotation> rotations;

  // One line per element: "Ry(q,theta)" then "PRot(string,theta)".
  std::string dump() const;
};

struct CdOptions {
  // Composite-Simpson sample points for the angle integral; rounded up to an
  // odd count >= 3.
  int quadrature_nodes = 129;
  // Re-evaluate alpha1 at every quadrature node (default). When off, alpha1
  // is held at its midpoint value lam = 1/2 and the integral collapses.
  bool alpha_per_node = true;
};

CdCircuit build_cd_circuit(const HuboProblem& problem, const DriverConfig& driver,
                           const Schedule& schedule, const CdOptions& options = {});

}  // namespace hubb
