// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Symbolic Pauli-string algebra. A string over n qubits is stored as two
// packed bitsets (x, z): per qubit, (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z, i.e.
// P = i^{x.z} X^x Z^z per letter, which makes every string Hermitian. With
// this encoding the product of two strings is the XOR of their bit pairs
// times a power of i obtained from word-parallel popcounts:
//
//   P(a) P(b) = i^g P(a^b),
//   g = |ax&az| + |bx&bz| + 2|az&bx| - |(ax^bx)&(az^bz)|   (mod 4).
//
// Operator sums keep real/complex coefficients in a map ordered by the
// canonical string order (lexicographic, qubit 0 first, I<X<Y<Z), which fixes
// rotation ordering downstream. Coefficients are pruned at 1e-14 after bulk
// operations to suppress floating-point dust without touching genuine terms.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hubb {

inline constexpr double kCoefficientPruneThreshold = 1e-14;

class PauliString;
struct PauliProduct;
PauliProduct multiply(const PauliString& a, const PauliString& b);

class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n);  // identity on n qubits

  // Builds from letters 'I','X','Y','Z'; character q of the text addresses
  // qubit q.
  static PauliString from_text(std::string_view letters);
  static PauliString single(int n, int qubit, char letter);

  int num_qubits() const { return n_; }
  char letter(int qubit) const;
  void set_letter(int qubit, char letter);
  bool is_identity() const;
  int weight() const;  // number of non-identity letters

  bool x_bit(int qubit) const;
  bool z_bit(int qubit) const;
  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

  bool commutes_with(const PauliString& other) const;

  std::string text() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
  }

  // Canonical strict weak order: lexicographic by letter from qubit 0,
  // I < X < Y < Z.
  struct Less {
    bool operator()(const PauliString& a, const PauliString& b) const;
  };

 private:
  friend PauliProduct multiply(const PauliString& a, const PauliString& b);

  int n_ = 0;
  std::vector<std::uint64_t> x_, z_;
};

struct PauliProduct {
  int phase_pow;       // product equals i^phase_pow * string, phase_pow in [0,4)
  PauliString string;
};

PauliProduct multiply(const PauliString& a, const PauliString& b);

// i^k as an exact complex value.
std::complex<double> phase_from_power(int phase_pow);

class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n) : n_(n) {}

  using TermMap = std::map<PauliString, std::complex<double>, PauliString::Less>;

  int num_qubits() const { return n_; }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  void add(const PauliString& p, std::complex<double> coeff);
  std::complex<double> coefficient(const PauliString& p) const;  // 0 if absent

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(std::complex<double> scale);

  // True when every coefficient is real to within tol.
  bool is_hermitian(double tol = 1e-12) const;

  // Drops terms with |coefficient| < threshold.
  void prune(double threshold = kCoefficientPruneThreshold);

  std::string text() const;  // debug form, e.g. "(0.5+0j)*XZI + ..."

 private:
  int n_ = 0;
  TermMap terms_;
};

PauliSum operator*(std::complex<double> scale, PauliSum sum);

// [A, B] = AB - BA, coefficients pruned after merging.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

// Normalized Hilbert-Schmidt inner product Tr[A^dagger B] / 2^n; Pauli
// strings are orthonormal under it, so this reduces to a coefficient dot
// product over shared strings.
std::complex<double> hs_inner(const PauliSum& a, const PauliSum& b);

}  // namespace hubb
