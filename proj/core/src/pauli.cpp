// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubb/pauli.hpp"

#include <bit>
#include <cstdio>
#include <stdexcept>

namespace hubb {

namespace {

constexpr std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

void check_qubit(int qubit, int n) {
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("pauli: qubit index out of range");
}

void check_same_register(int a, int b) {
  if (a != b) throw std::invalid_argument("pauli: register size mismatch");
}

}  // namespace

PauliString::PauliString(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("pauli: negative register size");
  x_.assign(words_for(n), 0);
  z_.assign(words_for(n), 0);
}

PauliString PauliString::from_text(std::string_view letters) {
  PauliString p(static_cast<int>(letters.size()));
  for (std::size_t q = 0; q < letters.size(); ++q) p.set_letter(static_cast<int>(q), letters[q]);
  return p;
}

PauliString PauliString::single(int n, int qubit, char letter) {
  PauliString p(n);
  p.set_letter(qubit, letter);
  return p;
}

char PauliString::letter(int qubit) const {
  check_qubit(qubit, n_);
  const bool x = x_bit(qubit), z = z_bit(qubit);
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set_letter(int qubit, char letter) {
  check_qubit(qubit, n_);
  bool x = false, z = false;
  switch (letter) {
    case 'I': break;
    case 'X': x = true; break;
    case 'Y': x = true; z = true; break;
    case 'Z': z = true; break;
    default: throw std::invalid_argument("pauli: letter must be one of I,X,Y,Z");
  }
  const std::size_t w = static_cast<std::size_t>(qubit) / 64;
  const std::uint64_t bit = 1ull << (qubit % 64);
  x_[w] = x ? (x_[w] | bit) : (x_[w] & ~bit);
  z_[w] = z ? (z_[w] | bit) : (z_[w] & ~bit);
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < x_.size(); ++w)
    if (x_[w] | z_[w]) return false;
  return true;
}

int PauliString::weight() const {
  int count = 0;
  for (std::size_t w = 0; w < x_.size(); ++w)
    count += std::popcount(x_[w] | z_[w]);
  return count;
}

bool PauliString::x_bit(int qubit) const {
  check_qubit(qubit, n_);
  return (x_[static_cast<std::size_t>(qubit) / 64] >> (qubit % 64)) & 1u;
}

bool PauliString::z_bit(int qubit) const {
  check_qubit(qubit, n_);
  return (z_[static_cast<std::size_t>(qubit) / 64] >> (qubit % 64)) & 1u;
}

bool PauliString::commutes_with(const PauliString& other) const {
  check_same_register(n_, other.n_);
  // Two strings commute iff their symplectic product is even.
  int parity = 0;
  for (std::size_t w = 0; w < x_.size(); ++w)
    parity ^= (std::popcount(x_[w] & other.z_[w]) ^ std::popcount(z_[w] & other.x_[w])) & 1;
  return parity == 0;
}

std::string PauliString::text() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
  return s;
}

bool PauliString::Less::operator()(const PauliString& a, const PauliString& b) const {
  check_same_register(a.n_, b.n_);
  for (std::size_t w = 0; w < a.x_.size(); ++w) {
    // Per qubit rank r = 2z + (x^z) orders letters I<X<Y<Z. Find the lowest
    // qubit whose rank differs.
    const std::uint64_t lo_a = a.x_[w] ^ a.z_[w], lo_b = b.x_[w] ^ b.z_[w];
    const std::uint64_t diff = (a.z_[w] ^ b.z_[w]) | (lo_a ^ lo_b);
    if (diff) {
      const int q = std::countr_zero(diff);
      const int ra = (((a.z_[w] >> q) & 1u) << 1) | ((lo_a >> q) & 1u);
      const int rb = (((b.z_[w] >> q) & 1u) << 1) | ((lo_b >> q) & 1u);
      return ra < rb;
    }
  }
  return false;
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
  check_same_register(a.num_qubits(), b.num_qubits());
  PauliString out(a.num_qubits());
  int g = 0;
  for (std::size_t w = 0; w < out.x_.size(); ++w) {
    const std::uint64_t ax = a.x_[w], az = a.z_[w];
    const std::uint64_t bx = b.x_[w], bz = b.z_[w];
    out.x_[w] = ax ^ bx;
    out.z_[w] = az ^ bz;
    g += std::popcount(ax & az) + std::popcount(bx & bz) + 2 * std::popcount(az & bx) +
         3 * std::popcount(out.x_[w] & out.z_[w]);  // 3 == -1 (mod 4)
  }
  return {g & 3, std::move(out)};
}

std::complex<double> phase_from_power(int phase_pow) {
  switch (((phase_pow % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void PauliSum::add(const PauliString& p, std::complex<double> coeff) {
  check_same_register(n_, p.num_qubits());
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) it->second += coeff;
}

std::complex<double> PauliSum::coefficient(const PauliString& p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? std::complex<double>{} : it->second;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_same_register(n_, other.n_);
  for (const auto& [p, c] : other.terms_) add(p, c);
  prune();
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_same_register(n_, other.n_);
  for (const auto& [p, c] : other.terms_) add(p, -c);
  prune();
  return *this;
}

PauliSum& PauliSum::operator*=(std::complex<double> scale) {
  for (auto& [p, c] : terms_) c *= scale;
  prune();
  return *this;
}

PauliSum operator*(std::complex<double> scale, PauliSum sum) {
  sum *= scale;
  return sum;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [p, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

void PauliSum::prune(double threshold) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < threshold) it = terms_.erase(it);
    else ++it;
  }
}

std::string PauliSum::text() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[64];
  for (const auto& [p, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::snprintf(buf, sizeof buf, "(%g%+gj)*", c.real(), c.imag());
    out += buf;
    out += p.text();
  }
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  check_same_register(a.num_qubits(), b.num_qubits());
  PauliSum out(a.num_qubits());
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      if (pa.commutes_with(pb)) continue;
      // For anticommuting strings BA = -AB, so [A,B] = 2 AB = 2 i^g (AB-string).
      auto prod = multiply(pa, pb);
      out.add(prod.string, 2.0 * phase_from_power(prod.phase_pow) * ca * cb);
    }
  }
  out.prune();
  return out;
}

std::complex<double> hs_inner(const PauliSum& a, const PauliSum& b) {
  check_same_register(a.num_qubits(), b.num_qubits());
  // Walk the smaller map, look up in the larger one.
  const PauliSum& small = a.term_count() <= b.term_count() ? a : b;
  const PauliSum& large = a.term_count() <= b.term_count() ? b : a;
  const bool small_is_a = &small == &a;
  std::complex<double> acc = 0.0;
  for (const auto& [p, c] : small.terms()) {
    const auto other = large.coefficient(p);
    if (other == std::complex<double>{}) continue;
    acc += small_is_a ? std::conj(c) * other : std::conj(other) * c;
  }
  return acc;
}

}  // namespace hubb
