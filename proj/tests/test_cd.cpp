// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubb/cd.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include <doctest.h>

#include "hubb/rng.hpp"
#include "oracles.hpp"

using namespace hubb;
using test::Mat;

namespace {

// Dense-matrix action S(alpha) = Tr[G^2]/2^n with
// G = d_lam H_ad - i [H_ad, i alpha O1] = O0 + alpha [H_ad, O1], built
// entirely from dense matrices.
double dense_action(const HuboProblem& p, const DriverConfig& d, double lam, double alpha) {
  const Mat hi = test::sum_dense(driver_hamiltonian(d));
  const Mat hf = test::sum_dense(final_hamiltonian(p));
  const Mat had = test::add(test::scale(hi, 1.0 - lam), hf, lam);
  const Mat o0 = test::add(hf, hi, -1.0);
  const Mat o1 = test::comm_dense(had, o0);
  const Mat o2 = test::comm_dense(had, o1);
  const Mat g = test::add(o0, o2, alpha);
  return test::trace(test::matmul(g, g)).real() / static_cast<double>(1 << p.n());
}

double oracle_alpha(const HuboProblem& p, const DriverConfig& d, double lam) {
  return test::golden_section_minimize(
      [&](double a) { return dense_action(p, d, lam, a); }, -50.0, 50.0);
}

HuboProblem random_problem(std::uint64_t seed, int n) {
  InstanceSpec spec;
  spec.n = n;
  spec.topology = Topology::kSparseChain;
  spec.seed = seed;
  return generate(spec);
}

}  // namespace

TEST_SUITE("cd") {

TEST_CASE("schedule endpoints and midpoint are pinned") {
  for (double T : {0.5, 1.0, 2.0}) {
    const Schedule s{T};
    CHECK(s.lambda(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.lambda(T) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.lambda(T / 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.lambda_dot(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.lambda_dot(T) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("schedule derivative matches central finite differences") {
  for (double T : {0.5, 1.0, 2.0}) {
    const Schedule s{T};
    const double h = 1e-6 * T;
    for (int k = 1; k <= 64; ++k) {
      const double t = T * k / 65.0;
      const double fd = (s.lambda(t + h) - s.lambda(t - h)) / (2.0 * h);
      CHECK(std::abs(s.lambda_dot(t) - fd) <= 1e-8);
    }
  }
}

TEST_CASE("schedule rejects evaluation outside its domain") {
  const Schedule s{1.0};
  CHECK_THROWS_AS(s.lambda(-0.01), std::domain_error);
  CHECK_THROWS_AS(s.lambda(1.01), std::domain_error);
  CHECK_THROWS_AS(s.lambda_dot(2.0), std::domain_error);
}

TEST_CASE("interpolated Hamiltonian hits both endpoints and mixes linearly") {
  HuboProblem p(2, {{0, 1.0}}, {{0, 1, 0.5}}, {});
  const auto d = DriverConfig::uniform(2);

  const auto at0 = build_h_ad(p, d, 0.0);
  CHECK(at0.coefficient(PauliString::from_text("XI")) == std::complex<double>{-1.0, 0.0});
  CHECK(at0.coefficient(PauliString::from_text("ZI")) == std::complex<double>{0.0, 0.0});

  const auto at1 = build_h_ad(p, d, 1.0);
  CHECK(at1.coefficient(PauliString::from_text("ZI")) == std::complex<double>{1.0, 0.0});
  CHECK(at1.coefficient(PauliString::from_text("ZZ")) == std::complex<double>{0.5, 0.0});
  CHECK(at1.coefficient(PauliString::from_text("XI")) == std::complex<double>{0.0, 0.0});

  const auto mid = build_h_ad(p, d, 0.3);
  CHECK(mid.coefficient(PauliString::from_text("XI")).real() == doctest::Approx(-0.7));
  CHECK(mid.coefficient(PauliString::from_text("IX")).real() == doctest::Approx(-0.7));
  CHECK(mid.coefficient(PauliString::from_text("ZI")).real() == doctest::Approx(0.3));
  CHECK(mid.coefficient(PauliString::from_text("ZZ")).real() == doctest::Approx(0.15));
  CHECK(mid.is_hermitian());
}

TEST_CASE("alpha1 matches the single-spin analytic form") {
  // For H_i = hx X, H_f = h Z the closed form reduces to
  // alpha1 = -1 / (4 ((1-lam)^2 hx^2 + lam^2 h^2)).
  const double h = 0.7;
  HuboProblem p(1, {{0, h}}, {}, {});
  auto d = DriverConfig::uniform(1, -1.0);
  for (double lam : {0.1, 0.5, 0.9}) {
    const auto got = alpha1(p, d, lam);
    REQUIRE(got.has_value());
    const double expect = -1.0 / (4.0 * ((1 - lam) * (1 - lam) + lam * lam * h * h));
    CHECK(*got == doctest::Approx(expect).epsilon(1e-12));
    CHECK(*got == doctest::Approx(oracle_alpha(p, d, lam)).epsilon(1e-8));
  }
}

TEST_CASE("alpha1 matches dense action minimization on random instances") {
  Rng rng(301);
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 1 + static_cast<int>(rng.next_below(3));
    const auto p = random_problem(500 + rep, n);
    auto d = DriverConfig::uniform(n, -1.0);
    for (int i = 0; i < n; ++i) d.hb[i] = 2.0 * rng.next_double() - 1.0;
    for (double lam : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto got = alpha1(p, d, lam);
      REQUIRE(got.has_value());
      CHECK(std::abs(*got - oracle_alpha(p, d, lam)) <= 1e-8);
    }
  }
}

TEST_CASE("alpha1 is undefined in the commuting limit") {
  HuboProblem p(2, {{0, 1.0}, {1, -0.5}}, {{0, 1, 0.25}}, {});
  DriverConfig d;
  d.hx = {0.0, 0.0};  // driver commutes with the problem Hamiltonian
  d.hb = {0.3, -0.2};
  CHECK_FALSE(alpha1(p, d, 0.5).has_value());
}

TEST_CASE("fast evaluator agrees with the direct computation") {
  Rng rng(302);
  for (int rep = 0; rep < 5; ++rep) {
    const auto p = random_problem(700 + rep, 4);
    auto d = DriverConfig::uniform(4, -1.0);
    for (int i = 0; i < 4; ++i) d.hb[i] = 2.0 * rng.next_double() - 1.0;
    const Alpha1Evaluator eval(p, d);
    for (int g = 0; g <= 20; ++g) {
      const double lam = g / 20.0;
      const auto direct = alpha1(p, d, lam);
      const auto fast = eval.at(lam);
      REQUIRE(direct.has_value() == fast.has_value());
      if (direct) CHECK(*fast == doctest::Approx(*direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("zero-bias preparation angles are exactly pi/2") {
  const auto p = random_problem(11, 3);
  const auto circuit = build_cd_circuit(p, DriverConfig::uniform(3), Schedule{});
  for (double theta : circuit.prep_angles) CHECK(theta == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
}

TEST_CASE("prepared single-qubit states are driver ground states") {
  Rng rng(303);
  for (int rep = 0; rep < 100; ++rep) {
    double hx = 4.0 * rng.next_double() - 2.0;
    if (std::abs(hx) < 0.1) hx = hx < 0 ? -0.1 : 0.1;
    const double hb = 6.0 * rng.next_double() - 3.0;
    HuboProblem p(1, {{0, 0.5}}, {}, {});
    DriverConfig d;
    d.hx = {hx};
    d.hb = {hb};
    const auto circuit = build_cd_circuit(p, d, Schedule{});
    const double theta = circuit.prep_angles[0];
    const std::complex<double> psi0 = std::cos(theta / 2), psi1 = std::sin(theta / 2);
    const double lam_min = -std::sqrt(hb * hb + hx * hx);
    // (hb X-row ...) acting on psi: H = [[hb, hx], [hx, -hb]].
    const auto r0 = hb * psi0 + hx * psi1 - lam_min * psi0;
    const auto r1 = hx * psi0 - hb * psi1 - lam_min * psi1;
    CHECK(std::sqrt(std::norm(r0) + std::norm(r1)) <= 1e-12);
  }
}

TEST_CASE("single-spin circuit carries exactly one Y rotation") {
  HuboProblem p(1, {{0, 1.0}}, {}, {});
  const auto circuit = build_cd_circuit(p, DriverConfig::uniform(1), Schedule{});
  REQUIRE(circuit.rotations.size() == 1);
  CHECK(circuit.rotations[0].string.text() == "Y");
  CHECK(circuit.rotations[0].angle != 0.0);
}

TEST_CASE("two-spin chain produces the expected string set in canonical order") {
  HuboProblem p(2, {{0, 0.4}, {1, -0.8}}, {{0, 1, 0.9}}, {});
  const auto circuit = build_cd_circuit(p, DriverConfig::uniform(2), Schedule{});
  std::set<std::string> strings;
  PauliString::Less less;
  for (std::size_t r = 0; r < circuit.rotations.size(); ++r) {
    strings.insert(circuit.rotations[r].string.text());
    CHECK(circuit.rotations[r].string.weight() <= 3);
    if (r > 0) CHECK(less(circuit.rotations[r - 1].string, circuit.rotations[r].string));
  }
  CHECK(strings == std::set<std::string>{"IY", "YI", "YZ", "ZY"});
}

TEST_CASE("quadrature is converged at the default node count") {
  const auto p = random_problem(12, 5);
  auto d = DriverConfig::uniform(5);
  d.hb = {0.2, -0.4, 0.1, 0.6, -0.3};
  CdOptions coarse, fine;
  fine.quadrature_nodes = 2 * coarse.quadrature_nodes;
  const auto a = build_cd_circuit(p, d, Schedule{}, coarse);
  const auto b = build_cd_circuit(p, d, Schedule{}, fine);
  REQUIRE(a.rotations.size() == b.rotations.size());
  for (std::size_t r = 0; r < a.rotations.size(); ++r)
    CHECK(std::abs(a.rotations[r].angle - b.rotations[r].angle) < 1e-6);
}

TEST_CASE("midpoint-held coefficient collapses the integral") {
  const auto p = random_problem(13, 3);
  auto d = DriverConfig::uniform(3);
  d.hb = {0.5, 0.0, -0.5};
  CdOptions held;
  held.alpha_per_node = false;
  const auto circuit = build_cd_circuit(p, d, Schedule{}, held);
  const Alpha1Evaluator eval(p, d);
  const double alpha_mid = *eval.at(0.5);
  for (const auto& r : circuit.rotations) {
    const double c = eval.cd_generator().coefficient(r.string).real();
    CHECK(r.angle == doctest::Approx(2.0 * c * alpha_mid).epsilon(1e-12));
  }
}

TEST_CASE("rotation angles do not depend on the total annealing time") {
  // The angle integral is a pure function of lam once the schedule is smooth,
  // so stretching T must not change the circuit.
  const auto p = random_problem(14, 4);
  auto d = DriverConfig::uniform(4);
  d.hb = {0.1, 0.2, 0.3, 0.4};
  const auto a = build_cd_circuit(p, d, Schedule{1.0});
  const auto b = build_cd_circuit(p, d, Schedule{7.5});
  REQUIRE(a.rotations.size() == b.rotations.size());
  for (std::size_t r = 0; r < a.rotations.size(); ++r)
    CHECK(a.rotations[r].angle == doctest::Approx(b.rotations[r].angle).epsilon(1e-9));
}

TEST_CASE("circuit dump lists preparations then rotations") {
  HuboProblem p(1, {{0, 1.0}}, {}, {});
  const auto circuit = build_cd_circuit(p, DriverConfig::uniform(1), Schedule{});
  const auto dump = circuit.dump();
  CHECK(dump.find("Ry(0,") == 0);
  CHECK(dump.find("PRot(Y,") != std::string::npos);
}

TEST_CASE("invalid circuit requests are rejected") {
  const auto p = random_problem(15, 3);
  CHECK_THROWS_AS(build_cd_circuit(p, DriverConfig::uniform(2), Schedule{}),
                  std::invalid_argument);
  DriverConfig zero_x = DriverConfig::uniform(3, 0.0);
  CHECK_THROWS_AS(build_cd_circuit(p, zero_x, Schedule{}), std::invalid_argument);
  CHECK_THROWS_AS(build_cd_circuit(p, DriverConfig::uniform(3), Schedule{-1.0}),
                  std::invalid_argument);
  CdOptions bad;
  bad.quadrature_nodes = 0;
  CHECK_THROWS_AS(build_cd_circuit(p, DriverConfig::uniform(3), Schedule{}, bad),
                  std::invalid_argument);
}

}  // TEST_SUITE
