#pragma once

#include <complex>
#include <vector>

namespace race {

/// Dirichlet character mod a prime q, labelled by j so that chi_j(g) = e^{2 pi i j/(q-1)}
/// for the least primitive root g.
struct CharacterLabel {
  int index = 0;
  bool is_real = false;
  int conjugate_index = 0;

  friend bool operator==(const CharacterLabel&, const CharacterLabel&) = default;
};

struct CharacterPartition {
  std::vector<CharacterLabel> real;    // R(q): nonprincipal real characters
  std::vector<CharacterLabel> paired;  // H(q): one representative per conjugate pair
};

/// Character group of (Z/qZ)^* for prime q. Values are kept as integer exponents of
/// e^{2 pi i/(q-1)} so multiplicativity and conjugation are exact.
class CharacterTable {
 public:
  explicit CharacterTable(int modulus);

  int modulus() const noexcept { return q_; }
  int order() const noexcept { return q_ - 1; }
  int primitive_root() const noexcept { return g_; }

  /// k with g^k == a (mod q). Throws ConfigError for non-reduced a.
  int dlog(long long a) const;
  /// Inverse of dlog: g^k mod q.
  int power(int k) const;

  CharacterLabel label(int j) const;

  /// Exponent e in [0, q-1) with chi_j(a) = e^{2 pi i e/(q-1)}.
  int exponent(int j, long long a) const;

  std::complex<double> value(int j, long long a) const;
  std::complex<double> value(const CharacterLabel& chi, long long a) const {
    return value(chi.index, a);
  }

  /// chi_j(-1) = +1.
  bool is_even(int j) const;

  /// exp(2 pi i k/(q-1)), with conj(root_of_unity(k)) == root_of_unity(-k) bitwise.
  std::complex<double> root_of_unity(int k) const;

  /// Real part of chi_j(a), computed from the exponent.
  double real_part(int j, long long a) const { return value(j, a).real(); }

  CharacterPartition partition() const;

  /// Canonical partition: H(q) takes the smaller index of each conjugate pair.
  std::vector<CharacterLabel> nonprincipal() const;

 private:
  void check_index(int j) const;

  int q_;
  int g_;
  std::vector<int> dlog_;   // indexed by residue, -1 for 0
  std::vector<int> power_;  // g^k mod q
};

bool is_prime(long long n);
int least_primitive_root(int q);

}  // namespace race
