#include <cmath>

#include "doctest.h"
#include "race/error.hpp"
#include "race/model.hpp"
#include "support.hpp"

using test_support::desk;
using test_support::num;
using test_support::oracles;

namespace {

const race::ModelParams& params() {
  static const auto p = race::variance_decomposition(desk().table, desk().zeros, desk().constants);
  return p;
}

}  // namespace

TEST_CASE("variance decomposition from data") {
  const auto& p = params();
  CHECK(p.low_character == 7);
  CHECK(p.generator == 8);
  CHECK(p.gamma1 == doctest::Approx(1.23119).epsilon(1e-5));
  CHECK(std::abs(p.total_variance - 4.21479) < 1e-5);
  CHECK(std::abs(p.top_variance - 1.13262) < 1e-5);
  CHECK(std::abs(p.residual_variance - 3.08218) < 1e-5);
  CHECK(std::abs(p.top_coefficient - 1.50507) < 1e-5);
  CHECK(p.top_variance / p.total_variance == doctest::Approx(0.27).epsilon(0.01));
  CHECK(p.residual_variance == doctest::Approx(p.total_variance - p.top_coefficient * p.top_coefficient / 2));
  CHECK(p.total_variance == doctest::Approx(2 * desk().constants.representative_sum(desk().table)));
}

TEST_CASE("normal CDF") {
  CHECK(race::normal_cdf(0, 3.0) == 0.5);
  CHECK(race::normal_cdf(40, 1.0) == 1.0);
  for (const auto& row : oracles().at("normal_cdf"))
    CHECK(std::abs(race::normal_cdf(num(row[0]), num(row[1])) - num(row[2])) < 1e-15);
}

TEST_CASE("model quadrant probabilities") {
  const double want[] = {0.289684, 0.265129, 0.234871, 0.210316, 0.200890};
  for (int k = 1; k <= 5; ++k)
    CHECK(std::abs(race::model_quadrant_probability(k, params()) - want[k - 1]) < 1e-6);
  for (int k = 1; k < 10; ++k)
    CHECK(race::model_quadrant_probability(k, params()) ==
          doctest::Approx(race::model_quadrant_probability(10 - k, params())).epsilon(1e-12));
  for (int k = 1; k < 5; ++k)
    CHECK(race::model_quadrant_probability(k, params()) >
          race::model_quadrant_probability(k + 1, params()));
}

TEST_CASE("uncorrelated limit") {
  auto p = params();
  p.top_coefficient = 1e-9;
  for (int k = 1; k < 10; ++k)
    CHECK(race::model_quadrant_probability(k, p) == doctest::Approx(0.25).epsilon(1e-8));
  CHECK_THROWS_AS(race::model_quadrant_probability(0, params()), race::ConfigError);
  CHECK_THROWS_AS(race::model_quadrant_probability(10, params()), race::ConfigError);
}

TEST_CASE("rotation index follows powers of the generator") {
  const auto& p = params();
  long long x = 1;
  for (int k = 0; k < 10; ++k) {
    CHECK(race::model_rotation_index(x, desk().table, p) == k);
    x = x * p.generator % 11;
  }
}

TEST_CASE("relative l2 error") {
  CHECK(race::relative_l2_error({1, 1}, {1, 1}) == 0);
  CHECK(race::relative_l2_error({3, 4}, {0, 0.0 + 5}) == doctest::Approx(std::sqrt(9 + 1) / 5));
  // Against the tabulated densities the five distinct rows give about 6.4%.
  const std::vector<double> model = {0.289684, 0.265129, 0.234871, 0.210316, 0.200890};
  const std::vector<double> delta = {0.267367, 0.253072, 0.218290, 0.213559, 0.185612};
  const double e = race::relative_l2_error(model, delta);
  CHECK(e > 0.054);
  CHECK(e < 0.074);
}
