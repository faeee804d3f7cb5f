#include "race/characters.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "race/error.hpp"

namespace race {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int least_primitive_root(int q) {
  if (!is_prime(q)) throw ConfigError("modulus " + std::to_string(q) + " is not prime");
  const int order = q - 1;
  std::vector<int> prime_factors;
  int m = order;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      prime_factors.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) prime_factors.push_back(m);

  auto powmod = [q](long long base, long long e) {
    long long r = 1;
    base %= q;
    while (e > 0) {
      if (e & 1) r = r * base % q;
      base = base * base % q;
      e >>= 1;
    }
    return r;
  };
  for (int g = 2; g < q; ++g) {
    bool generator = true;
    for (int p : prime_factors) {
      if (powmod(g, order / p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  return 1;  // q == 2
}

CharacterTable::CharacterTable(int modulus) : q_(modulus) {
  if (modulus < 3) throw ConfigError("modulus must be >= 3, got " + std::to_string(modulus));
  if (!is_prime(modulus))
    throw ConfigError("only prime moduli are supported (cyclic character group); got " +
                      std::to_string(modulus));
  g_ = least_primitive_root(modulus);
  dlog_.assign(static_cast<std::size_t>(q_), -1);
  power_.resize(static_cast<std::size_t>(q_ - 1));
  long long x = 1;
  for (int k = 0; k < q_ - 1; ++k) {
    power_[static_cast<std::size_t>(k)] = static_cast<int>(x);
    dlog_[static_cast<std::size_t>(x)] = k;
    x = x * g_ % q_;
  }
}

int CharacterTable::dlog(long long a) const {
  long long r = a % q_;
  if (r < 0) r += q_;
  if (r == 0)
    throw ConfigError("residue " + std::to_string(a) + " is not coprime to " + std::to_string(q_));
  return dlog_[static_cast<std::size_t>(r)];
}

int CharacterTable::power(int k) const {
  const int n = order();
  k %= n;
  if (k < 0) k += n;
  return power_[static_cast<std::size_t>(k)];
}

void CharacterTable::check_index(int j) const {
  if (j < 0 || j >= order())
    throw ConfigError("character index " + std::to_string(j) + " out of range [0, " +
                      std::to_string(order() - 1) + "]");
}

CharacterLabel CharacterTable::label(int j) const {
  check_index(j);
  const int n = order();
  const int conj = (n - j) % n;
  return {j, conj == j, conj};
}

int CharacterTable::exponent(int j, long long a) const {
  check_index(j);
  return static_cast<int>(static_cast<long long>(j) * dlog(a) % order());
}

std::complex<double> CharacterTable::root_of_unity(int k) const {
  const int n = order();
  k %= n;
  if (k < 0) k += n;
  // Evaluate on the upper half and mirror, so conjugates agree bitwise.
  const bool lower = 2 * k > n;
  const int kk = lower ? n - k : k;
  if (kk == 0) return {1.0, 0.0};
  if (2 * kk == n) return {-1.0, 0.0};
  if (4 * kk == n) return {0.0, lower ? -1.0 : 1.0};
  const double angle = 2.0 * std::numbers::pi * kk / n;
  const double s = std::sin(angle);
  return {std::cos(angle), lower ? -s : s};
}

std::complex<double> CharacterTable::value(int j, long long a) const {
  return root_of_unity(exponent(j, a));
}

bool CharacterTable::is_even(int j) const { return exponent(j, q_ - 1) == 0; }

std::vector<CharacterLabel> CharacterTable::nonprincipal() const {
  std::vector<CharacterLabel> out;
  for (int j = 1; j < order(); ++j) out.push_back(label(j));
  return out;
}

CharacterPartition CharacterTable::partition() const {
  CharacterPartition p;
  for (int j = 1; j < order(); ++j) {
    const auto chi = label(j);
    if (chi.is_real)
      p.real.push_back(chi);
    else if (j < chi.conjugate_index)
      p.paired.push_back(chi);
  }
  return p;
}

}  // namespace race
