// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubb/cd.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace hubb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kImag{0.0, 1.0};

void check_time(double t, double T) {
  if (!(t >= 0.0 && t <= T)) throw std::domain_error("schedule evaluated outside [0, T]");
}

void check_driver(const DriverConfig& driver, int n) {
  if (static_cast<int>(driver.hx.size()) != n || static_cast<int>(driver.hb.size()) != n)
    throw std::invalid_argument("driver field length does not match problem size");
}

}  // namespace

double Schedule::lambda(double t) const {
  if (!(total_time > 0.0)) throw std::invalid_argument("schedule: total_time must be positive");
  check_time(t, total_time);
  const double s = std::sin(kPi * t / (2.0 * total_time));
  const double u = 0.5 * kPi * s * s;
  const double su = std::sin(u);
  return su * su;
}

double Schedule::lambda_dot(double t) const {
  if (!(total_time > 0.0)) throw std::invalid_argument("schedule: total_time must be positive");
  check_time(t, total_time);
  const double s = std::sin(kPi * t / (2.0 * total_time));
  return (kPi * kPi / (4.0 * total_time)) * std::sin(kPi * s * s) * std::sin(kPi * t / total_time);
}

DriverConfig DriverConfig::uniform(int n, double hx_value) {
  DriverConfig d;
  d.hx.assign(static_cast<std::size_t>(n), hx_value);
  d.hb.assign(static_cast<std::size_t>(n), 0.0);
  return d;
}

PauliSum final_hamiltonian(const HuboProblem& problem) {
  const int n = problem.n();
  PauliSum h(n);
  for (const auto& t : problem.linear()) h.add(PauliString::single(n, t.i, 'Z'), t.c);
  for (const auto& t : problem.quadratic()) {
    PauliString p(n);
    p.set_letter(t.i, 'Z');
    p.set_letter(t.j, 'Z');
    h.add(p, t.c);
  }
  for (const auto& t : problem.cubic()) {
    PauliString p(n);
    p.set_letter(t.i, 'Z');
    p.set_letter(t.j, 'Z');
    p.set_letter(t.k, 'Z');
    h.add(p, t.c);
  }
  return h;
}

PauliSum driver_hamiltonian(const DriverConfig& driver) {
  const int n = static_cast<int>(driver.hx.size());
  if (driver.hb.size() != driver.hx.size())
    throw std::invalid_argument("driver: hx and hb must have equal length");
  PauliSum h(n);
  for (int j = 0; j < n; ++j) {
    if (driver.hx[j] != 0.0) h.add(PauliString::single(n, j, 'X'), driver.hx[j]);
    if (driver.hb[j] != 0.0) h.add(PauliString::single(n, j, 'Z'), driver.hb[j]);
  }
  return h;
}

PauliSum build_h_ad(const HuboProblem& problem, const DriverConfig& driver, double lam) {
  check_driver(driver, problem.n());
  PauliSum h = (1.0 - lam) * driver_hamiltonian(driver);
  h += lam * final_hamiltonian(problem);
  return h;
}

std::optional<double> alpha1(const HuboProblem& problem, const DriverConfig& driver, double lam) {
  check_driver(driver, problem.n());
  if (!(lam >= 0.0 && lam <= 1.0)) throw std::domain_error("alpha1: lam outside [0, 1]");
  const PauliSum h_i = driver_hamiltonian(driver);
  const PauliSum h_f = final_hamiltonian(problem);
  PauliSum o0 = h_f;  // d_lam H_ad
  o0 -= h_i;
  const PauliSum h_ad = build_h_ad(problem, driver, lam);
  const PauliSum o1 = commutator(h_ad, o0);
  const PauliSum o2 = commutator(h_ad, o1);
  const double den = hs_inner(o2, o2).real();
  if (den == 0.0) return std::nullopt;
  return -hs_inner(o0, o2).real() / den;
}

Alpha1Evaluator::Alpha1Evaluator(const HuboProblem& problem, const DriverConfig& driver) {
  check_driver(driver, problem.n());
  const PauliSum h_i = driver_hamiltonian(driver);
  const PauliSum h_f = final_hamiltonian(problem);
  PauliSum o0 = h_f;
  o0 -= h_i;
  // O1 = [H_ad, d_lam H_ad] = (1-lam)[H_i,H_f] + lam[H_f,-H_i] = [H_i, H_f]
  // for every lam; store its Hermitian form i*O1.
  const PauliSum o1 = commutator(h_i, h_f);
  cd_generator_ = kImag * o1;
  // O2(lam) = [H_ad, O1] = (1-lam) D1 + lam D2.
  const PauliSum d1 = commutator(h_i, o1);
  const PauliSum d2 = commutator(h_f, o1);
  u1_ = hs_inner(o0, d1).real();
  u2_ = hs_inner(o0, d2).real();
  v11_ = hs_inner(d1, d1).real();
  v22_ = hs_inner(d2, d2).real();
  v12x2_ = 2.0 * hs_inner(d1, d2).real();
}

std::optional<double> Alpha1Evaluator::at(double lam) const {
  if (!(lam >= 0.0 && lam <= 1.0)) throw std::domain_error("alpha1: lam outside [0, 1]");
  const double a = 1.0 - lam, b = lam;
  const double den = a * a * v11_ + a * b * v12x2_ + b * b * v22_;
  if (den == 0.0) return std::nullopt;
  const double num = a * u1_ + b * u2_;
  return -num / den;
}

std::string CdCircuit::dump() const {
  std::string out;
  char buf[160];
  for (std::size_t q = 0; q < prep_angles.size(); ++q) {
    std::snprintf(buf, sizeof buf, "Ry(%zu,%.17g)\n", q, prep_angles[q]);
    out += buf;
  }
  for (const auto& r : rotations) {
    std::snprintf(buf, sizeof buf, "PRot(%s,%.17g)\n", r.string.text().c_str(), r.angle);
    out += buf;
  }
  return out;
}

namespace {

// Wraps an angle into (-pi, pi]; inputs here are within (-2pi, 2pi].
double wrap_to_pi(double a) {
  if (a > kPi) a -= 2.0 * kPi;
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

// Composite Simpson over [0, T] with an odd number of sample points.
double simpson(double T, int nodes, const std::function<double(double)>& f) {
  const int intervals = nodes - 1;
  const double h = T / intervals;
  double acc = f(0.0) + f(T);
  for (int k = 1; k < intervals; ++k) acc += f(k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

CdCircuit build_cd_circuit(const HuboProblem& problem, const DriverConfig& driver,
                           const Schedule& schedule, const CdOptions& options) {
  const int n = problem.n();
  check_driver(driver, n);
  if (!(schedule.total_time > 0.0))
    throw std::invalid_argument("build_cd_circuit: total_time must be positive");
  if (options.quadrature_nodes < 1)
    throw std::invalid_argument("build_cd_circuit: quadrature_nodes must be positive");

  CdCircuit circuit;
  circuit.prep_angles.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double hx = driver.hx[i], hb = driver.hb[i];
    if (hx == 0.0)
      throw std::invalid_argument("build_cd_circuit: driver hx entries must be nonzero");
    // Ground state of hx X + hb Z with eigenvalue lam_min = -sqrt(hb^2+hx^2);
    // wrapped so that the zero-bias state comes out as theta = pi/2 exactly
    // (the wrap only changes a global sign of the prepared state).
    const double lam_min = -std::sqrt(hb * hb + hx * hx);
    circuit.prep_angles[i] = wrap_to_pi(2.0 * std::atan2(-hb + lam_min, hx));
  }

  const Alpha1Evaluator eval(problem, driver);

  double integral = 0.0;
  if (options.alpha_per_node) {
    int nodes = std::max(3, options.quadrature_nodes);
    if (nodes % 2 == 0) ++nodes;
    integral = simpson(schedule.total_time, nodes, [&](double t) {
      const double ld = schedule.lambda_dot(t);
      if (ld == 0.0) return 0.0;
      return ld * eval.at(schedule.lambda(t)).value_or(0.0);
    });
  } else {
    // Holding alpha1 at the midpoint makes the integral alpha1(1/2) times the
    // total schedule displacement.
    integral = eval.at(0.5).value_or(0.0) *
               (schedule.lambda(schedule.total_time) - schedule.lambda(0.0));
  }

  circuit.rotations.reserve(eval.cd_generator().term_count());
  for (const auto& [p, c] : eval.cd_generator().terms()) {
    const double angle = 2.0 * c.real() * integral;
    if (!std::isfinite(angle))
      throw std::runtime_error("build_cd_circuit: non-finite rotation angle");
    circuit.rotations.push_back({p, angle});
  }
  return circuit;
}

}  // namespace hubb
