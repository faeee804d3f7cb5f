#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "race/charfn.hpp"
#include "race/errbounds.hpp"
#include "race/error.hpp"
#include "support.hpp"

using test_support::desk;
using test_support::num;
using test_support::oracles;

namespace {

// Independent product using Boost's J0.
double boost_factor(double z, const race::TruncatedFactor& f) {
  double p = 1.0;
  for (double a : f.alpha) p *= boost::math::cyl_bessel_j(0, a * z);
  return p * (1.0 + f.b1 * z * z);
}

const std::vector<race::TruncatedFactor>& desk_factors() {
  static const auto f =
      race::truncated_factors(desk().table, 2500, desk().zeros, desk().constants);
  return f;
}

}  // namespace

TEST_CASE("J0 special values") {
  CHECK(race::bessel_j0(0.0) == 1.0);
  CHECK(std::abs(race::bessel_j0(2.404825557695773)) < 5e-13);
  CHECK(std::abs(race::bessel_j0(5.520078110286311)) < 5e-13);
  CHECK(race::bessel_j0(-3.7) == race::bessel_j0(3.7));
}

TEST_CASE("J0 against the high-precision fixture") {
  std::size_t n = 0;
  for (const auto& row : oracles().at("j0")) {
    const double x = num(row[0]);
    const double want = num(row[1]);
    CHECK_MESSAGE(std::abs(race::bessel_j0(x) - want) <= 5e-14, "x = ", x);
    ++n;
  }
  CHECK(n >= 200);
}

TEST_CASE("J0 against Boost and libstdc++ on 20000 points of [0, 5000]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> wide(0.0, 5000.0), narrow(0.0, 20.0);
  double worst_boost = 0, worst_std = 0;
  for (int i = 0; i < 20000; ++i) {
    const double x = (i % 4 == 0) ? narrow(rng) : wide(rng);
    const double mine = race::bessel_j0(x);
    worst_boost = std::max(worst_boost, std::abs(mine - boost::math::cyl_bessel_j(0, x)));
    worst_std = std::max(worst_std, std::abs(mine - std::cyl_bessel_j(0.0, x)));
  }
  // Boost is the tight reference. libstdc++ switches to a short asymptotic series for large x
  // and is itself only good to a few 1e-13 there, so it only guards against gross errors.
  CHECK(worst_boost < 5e-14 + 1e-15);
  CHECK(worst_std < 1e-12);
}

TEST_CASE("F_T against the high-precision fixture") {
  const auto& factors = desk_factors();
  for (const auto& entry : oracles().at("factors")) {
    const int chi = entry.at("chi").get<int>();
    const auto it = std::find_if(factors.begin(), factors.end(),
                                 [&](const auto& f) { return f.chi.index == chi; });
    REQUIRE(it != factors.end());
    for (const auto& v : entry.at("values")) {
      const double z = num(v[0]);
      const double want = num(v[1]);
      CHECK_MESSAGE(std::abs(race::F_T(z, *it) - want) <= 1e-12 * std::max(1.0, std::abs(want)),
                    "chi ", chi, " z ", z);
    }
  }
}

TEST_CASE("F_T basic structure") {
  const auto& factors = desk_factors();
  REQUIRE(factors.size() == 5);
  CHECK(factors[0].chi.index == 5);
  CHECK_FALSE(factors[0].paired);
  for (std::size_t i = 1; i < 5; ++i) CHECK(factors[i].paired);
  for (const auto& f : factors) {
    CHECK(race::F_T(0.0, f) == 1.0);
    CHECK(f.b1 < 0);
    for (std::size_t k = 1; k < f.alpha.size(); ++k) CHECK(f.alpha[k] <= f.alpha[k - 1]);
    for (double z : {0.3, 1.7, 4.2, 9.9}) CHECK(std::abs(race::F_T(z, f) - boost_factor(z, f)) < 1e-13);
  }
  // The paired product over chi and its conjugate is the product of the two one-sided ones.
  const auto& d = desk();
  race::TruncatedFactor one = factors[1];
  race::TruncatedFactor other = factors[1];
  one.alpha.clear();
  other.alpha.clear();
  for (double g : d.zeros.ordinates_below(1, 2500)) one.alpha.push_back(2 / std::sqrt(0.25 + g * g));
  for (double g : d.zeros.ordinates_below(9, 2500)) other.alpha.push_back(2 / std::sqrt(0.25 + g * g));
  one.b1 = other.b1 = 0;
  race::TruncatedFactor plain = factors[1];
  plain.b1 = 0;
  for (double z : {0.5, 2.0, 6.0})
    CHECK(race::F_T(z, plain) == doctest::Approx(race::F_T(z, one) * race::F_T(z, other)).epsilon(1e-13));
}

TEST_CASE("b1(T, chi)") {
  const auto& d = desk();
  for (int j = 1; j < 10; ++j) {
    const bool real = d.table.label(j).is_real;
    const double full = real ? d.constants.neg_b1_real(d.table, j) : d.constants.neg_b1_tilde(j);
    CHECK(race::b1_T(d.table, j, 0, d.zeros, d.constants, !real) == doctest::Approx(-full));
    double prev = -full;
    for (double T : {10.0, 100.0, 1000.0, 2500.0}) {
      const double b = race::b1_T(d.table, j, T, d.zeros, d.constants, !real);
      CHECK(b >= prev);
      CHECK(b <= 0);
      prev = b;
    }
  }
  CHECK_THROWS_AS(race::b1_T(d.table, 1, 100, d.zeros, d.constants, false), race::ConfigError);
  // b1 scales like -1/(pi) log(qT)/T per pair: at T = 2500 it is about four times the 10^4 value.
  const double b = race::b1_T(d.table, 1, 2500, d.zeros, d.constants, true);
  CHECK(b < -3.42832e-4);
  CHECK(b > -4 * 3.42832e-4 * 1.2);
}

TEST_CASE("d(chi) reproduces the bounded-decay table") {
  const auto& d = desk();
  const double table[9][4] = {{820, 1855630, 21021079, 73516699},  {1189, 2875162, 32845058, 115861968},
                              {1195, 2916371, 33450847, 116963421}, {1203, 2950376, 34133529, 119474311},
                              {678, 1549125, 17785195, 61586977},  {770, 1800290, 20607026, 71566480},
                              {355, 742204, 8398441, 28913287},     {880, 2026172, 23375053, 81872319},
                              {715, 1590237, 18149703, 63453141}};
  const int J[4] = {10, 17, 19, 20};
  for (int j = 1; j < 10; ++j)
    for (int c = 0; c < 4; ++c) {
      const auto fb = race::f_bound_constants(d.zeros.ordinates(j), J[c]);
      CHECK_MESSAGE(fb.d == table[j - 1][c], "chi ", j, " J ", J[c]);
      CHECK(fb.e == J[c] / 2.0);
      CHECK(fb.d_exact <= fb.d);
      CHECK(fb.d_exact > fb.d - 1);
    }
  const auto trivial = race::f_bound_constants(d.zeros.ordinates(1), 0);
  CHECK(trivial.d == 1);
  CHECK(trivial.e == 0);
}

TEST_CASE("property: |F| <= d |x|^{-e} on a grid") {
  const auto& d = desk();
  for (int j = 1; j < 10; ++j) {
    race::TruncatedFactor f;
    for (double g : d.zeros.ordinates_below(j, 2500)) f.alpha.push_back(2 / std::sqrt(0.25 + g * g));
    for (int J : {10, 17}) {
      const auto fb = race::f_bound_constants(d.zeros.ordinates(j), J);
      for (double x = 0.5; x < 60; x += 0.37)
        CHECK(std::abs(race::F_T(x, f)) <= std::min(1.0, fb.d_exact * std::pow(x, -fb.e)) + 1e-15);
    }
  }
}

TEST_CASE("property: phi_X symmetry and evenness on a 100-point grid") {
  const auto& d = desk();
  const auto& factors = desk_factors();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (long long a = 2; a < 11; ++a) {
    CHECK(race::phi_X_truncated(0, 0, a, d.table, factors) == 1.0);
    for (int i = 0; i < 100 / 9 + 1; ++i) {
      const double t1 = u(rng), t2 = u(rng);
      const double p = race::phi_X_truncated(t1, t2, a, d.table, factors);
      CHECK(race::phi_X_truncated(-t1, -t2, a, d.table, factors) == p);
      CHECK(std::abs(race::phi_X_truncated(t2, t1, a, d.table, factors) - p) <= 1e-12);
    }
  }
}

TEST_CASE("property: refining T stays inside the product-truncation envelopes") {
  const auto& d = desk();
  const auto coarse = race::truncated_factors(d.table, 800, d.zeros, d.constants);
  const auto& fine = desk_factors();
  const double bc = race::b_hat(coarse), bf = race::b_hat(fine);
  for (double z = 0.25; z * z * bc < 0.5 && z < 12; z += 0.5) {
    for (std::size_t i = 0; i < fine.size(); ++i) {
      const double Fc = race::F_T(z, coarse[i]), Ff = race::F_T(z, fine[i]);
      const double ec = std::abs(Fc) * race::D_factor(z, bc) * 1.01;
      const double ef = std::abs(Ff) * race::D_factor(z, bf) * 1.01;
      CHECK(std::abs(Fc - Ff) <= ec + ef + 1e-15);
    }
  }
}
