#include <complex>

#include "doctest.h"
#include "race/characters.hpp"
#include "race/error.hpp"

using race::CharacterTable;

TEST_CASE("primitive roots and discrete logs mod 11") {
  const CharacterTable t(11);
  CHECK(t.primitive_root() == 2);
  CHECK(t.order() == 10);
  for (int k = 0; k < 10; ++k) CHECK(t.dlog(t.power(k)) == k);
  for (long long a = 1; a < 11; ++a) CHECK(t.power(t.dlog(a)) == a);
  CHECK(t.dlog(8) == 3);
  CHECK(t.dlog(-1) == 5);
  CHECK_THROWS_AS(t.dlog(0), race::ConfigError);
  CHECK_THROWS_AS(t.dlog(22), race::ConfigError);
}

TEST_CASE("non-prime moduli are rejected") {
  CHECK_THROWS_AS(CharacterTable(12), race::ConfigError);
  CHECK_THROWS_AS(CharacterTable(1), race::ConfigError);
  CHECK_NOTHROW(CharacterTable(13));
}

TEST_CASE("character values at the generator") {
  const CharacterTable t(11);
  for (int j = 0; j < 10; ++j) {
    const auto v = t.value(j, 2);
    const double angle = 2 * 3.141592653589793 * j / 10;
    CHECK(v.real() == doctest::Approx(std::cos(angle)).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(std::sin(angle)).epsilon(1e-15));
  }
  // chi_7(8) = e^{2 pi i/10}: 8 = 2^3 and 7 * 3 = 21 = 1 mod 10.
  CHECK(t.exponent(7, 8) == 1);
}

TEST_CASE("multiplicativity and conjugation are exact on exponents") {
  const CharacterTable t(11);
  for (int j = 1; j < 10; ++j) {
    const auto chi = t.label(j);
    CHECK(chi.conjugate_index == 10 - j);
    CHECK(chi.is_real == (j == 5));
    CHECK(t.is_even(j) == (j % 2 == 0));
    for (long long a = 1; a < 11; ++a)
      for (long long b = 1; b < 11; ++b)
        CHECK(t.exponent(j, a * b % 11) == (t.exponent(j, a) + t.exponent(j, b)) % 10);
    for (long long a = 1; a < 11; ++a) {
      const auto v = t.value(j, a);
      const auto w = t.value(chi.conjugate_index, a);
      CHECK(w.real() == v.real());
      CHECK(w.imag() == -v.imag());
    }
  }
}

TEST_CASE("partition into real and one-per-pair characters") {
  const CharacterTable t(11);
  const auto p = t.partition();
  REQUIRE(p.real.size() == 1);
  CHECK(p.real[0].index == 5);
  REQUIRE(p.paired.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(p.paired[static_cast<std::size_t>(i)].index == i + 1);
  CHECK(t.nonprincipal().size() == 9);
}

TEST_CASE("property: orthogonality of the character table") {
  for (int q : {5, 7, 11, 13, 17}) {
    const CharacterTable t(q);
    for (int i = 0; i < t.order(); ++i)
      for (int j = 0; j < t.order(); ++j) {
        std::complex<double> s = 0;
        for (long long a = 1; a < q; ++a) s += t.value(i, a) * std::conj(t.value(j, a));
        CHECK(std::abs(s - std::complex<double>(i == j ? t.order() : 0)) < 1e-12);
      }
  }
}
