#include <cmath>
#include <limits>

#include "doctest.h"
#include "race/charfn.hpp"
#include "race/error.hpp"
#include "race/zerodata.hpp"
#include "support.hpp"

using nlohmann::json;
using test_support::desk;

namespace {

json tiny_file(const std::string& labeling = "paper") {
  json doc = {{"modulus", 11}, {"labeling", labeling}, {"source", "unit test"}};
  doc["characters"] = json::array();
  for (int j = 1; j < 10; ++j)
    doc["characters"].push_back(
        {{"index", j}, {"t_max", "30"}, {"zeros", {std::to_string(1.5 + j) + "5", "20.25"}}});
  return doc;
}

}  // namespace

TEST_CASE("desk data: lowest zero belongs to chi_7") {
  const auto& d = desk();
  double lowest = std::numeric_limits<double>::infinity();
  int who = 0;
  for (int j = 1; j < 10; ++j) {
    const double g = d.zeros.ordinates(j).front();
    if (g < lowest) {
      lowest = g;
      who = j;
    }
  }
  CHECK(who == 7);
  CHECK(lowest == doctest::Approx(1.23119).epsilon(1e-5));
  // Every other zero sits above 2.47724.
  for (int j = 1; j < 10; ++j) {
    const auto& g = d.zeros.ordinates(j);
    CHECK(g[j == 7 ? 1 : 0] >= 2.4772);
  }
  CHECK(d.zeros.min_t_max() >= 2500);
  CHECK(d.zeros.accuracy() <= 1e-9);
}

TEST_CASE("analytic constants reproduce the five tabulated sums") {
  const auto& d = desk();
  CHECK(std::abs(d.constants.neg_b1_tilde(1) - 0.371958756757) < 1e-9);
  CHECK(std::abs(d.constants.neg_b1_tilde(2) - 0.304226855907) < 1e-9);
  CHECK(std::abs(d.constants.neg_b1_tilde(3) - 0.817510797013) < 1e-9);
  CHECK(std::abs(d.constants.neg_b1_tilde(4) - 0.359942299951) < 1e-9);
  CHECK(std::abs(d.constants.neg_b1_real(d.table, 5) - 0.253756556727) < 1e-9);
  for (int j = 1; j < 10; ++j) {
    CHECK(d.constants.neg_b1_tilde(j) > 0);
    CHECK(d.constants.neg_b1_tilde(j) == d.constants.neg_b1_tilde(10 - j));
  }
  CHECK_THROWS_AS(d.constants.neg_b1_real(d.table, 1), race::ConfigError);
}

TEST_CASE("Vorhauer formula: parity term") {
  const race::CharacterTable t(11);
  // Identical inputs differ exactly by 2 log 2 between an even and an odd character.
  const double even = race::b1_zero_from_logderiv(t, 2, 0.1);
  const double odd = race::b1_zero_from_logderiv(t, 1, 0.1);
  CHECK(odd - even == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(race::b1_zero_from_logderiv(t, 0, 0.1), race::ConfigError);
}

TEST_CASE("alpha sequence head and tail") {
  const auto& d = desk();
  const auto s = race::alpha_sequence(d.zeros, d.constants, d.table);
  REQUIRE(s.r.size() > 10);
  CHECK(s.r[0] == doctest::Approx(1.50507).epsilon(1e-5));
  CHECK(s.r[1] == doctest::Approx(0.79139).epsilon(1e-5));
  CHECK(s.r[2] == doctest::Approx(0.72940).epsilon(1e-5));
  CHECK(s.r[3] == doctest::Approx(0.57949).epsilon(1e-5));
  CHECK(s.partial_sums[3] == doctest::Approx(3.02586).epsilon(1e-5));
  CHECK(s.total_squares_upper / 4 == doctest::Approx(2.107395).epsilon(1e-6));
  CHECK(s.tail_squares_upper(3) <= 5.01);
  CHECK(s.tail_squares_upper(3) >= 5.0);
  for (std::size_t k = 1; k < s.r.size(); ++k) CHECK(s.r[k] <= s.r[k - 1]);
  CHECK(s.untabulated_cap <= s.r.back() * (1 + 1e-12));
}

TEST_CASE("property: tail-of-squares bound is monotone in the tabulated height") {
  const auto& d = desk();
  double prev = std::numeric_limits<double>::infinity();
  for (double T : {200.0, 500.0, 1000.0, 2500.0}) {
    const auto z = d.zeros.truncated(T);
    const auto s = race::alpha_sequence(z, d.constants, d.table);
    const double tail = s.tail_squares_upper(3);
    CHECK(tail <= prev);
    prev = tail;
  }
}

TEST_CASE("property: (1/4) sum r_k^2 equals the sum of representative constants") {
  const auto& d = desk();
  const auto s = race::alpha_sequence(d.zeros, d.constants, d.table);
  double sq = 0;
  for (double r : s.r) sq += r * r;
  const double rep = d.constants.representative_sum(d.table);
  // Tabulated part stays below; the certified total sits just above.
  CHECK(sq / 4 < rep);
  CHECK(s.total_squares_upper / 4 >= rep);
  CHECK(s.total_squares_upper / 4 - rep < 1e-6);
}

TEST_CASE("zero-count sanity on the shipped table") {
  for (const auto& c : race::zero_count_sanity(desk().zeros)) CHECK_MESSAGE(c.ok, c.index);
  CHECK(race::expected_zero_count(11, 100) == doctest::Approx(100 / (2 * M_PI) *
                                                              std::log(1100 / (2 * M_PI * M_E))));
}

TEST_CASE("round trip through the canonical form") {
  const auto& z = desk().zeros;
  const race::CharacterTable t(11);
  const auto back = race::parse_zero_table(race::to_json(z), t);
  for (int j = 1; j < 10; ++j) {
    CHECK(back.ordinates(j) == z.ordinates(j));
    CHECK(back.t_max(j) == z.t_max(j));
  }
  CHECK(back.accuracy() == z.accuracy());
  CHECK(race::to_json(back) == race::to_json(z));
}

TEST_CASE("loader rejects malformed tables") {
  const race::CharacterTable t(11);
  CHECK_NOTHROW(race::parse_zero_table(tiny_file(), t));

  auto zero = tiny_file();
  zero["characters"][2]["zeros"][0] = "0.0";
  try {
    race::parse_zero_table(zero, t);
    FAIL("expected a DataError");
  } catch (const race::DataError& e) {
    CHECK(std::string(e.what()).find("LI") != std::string::npos);
  }

  auto unsorted = tiny_file();
  unsorted["characters"][0]["zeros"] = {"5.0", "4.0"};
  CHECK_THROWS_AS(race::parse_zero_table(unsorted, t), race::DataError);

  auto missing = tiny_file();
  missing["characters"].erase(missing["characters"].begin() + 3);
  CHECK_THROWS_AS(race::parse_zero_table(missing, t), race::DataError);

  auto dup = tiny_file();
  dup["characters"][1]["index"] = 1;
  CHECK_THROWS_AS(race::parse_zero_table(dup, t), race::DataError);

  auto label = tiny_file("sage");
  CHECK_THROWS_AS(race::parse_zero_table(label, t), race::DataError);

  auto high = tiny_file();
  high["characters"][0]["zeros"] = {"31.0"};
  CHECK_THROWS_AS(race::parse_zero_table(high, t), race::DataError);

  auto bad_decimal = tiny_file();
  bad_decimal["characters"][0]["zeros"] = {"1.2.3"};
  CHECK_THROWS_AS(race::parse_zero_table(bad_decimal, t), race::DataError);

  auto wrong_q = tiny_file();
  wrong_q["modulus"] = 13;
  CHECK_THROWS_AS(race::parse_zero_table(wrong_q, t), race::DataError);
}

TEST_CASE("Conrey labels map through chi(2)") {
  const race::CharacterTable t(11);
  // Conrey index n = 2^j mod 11 corresponds to paper index j.
  const int conrey_of[10] = {1, 2, 4, 8, 5, 10, 9, 7, 3, 6};
  auto doc = tiny_file("conrey");
  for (int j = 1; j < 10; ++j) {
    doc["characters"][static_cast<std::size_t>(j - 1)]["index"] = conrey_of[j];
    doc["characters"][static_cast<std::size_t>(j - 1)]["zeros"] = {std::to_string(j) + ".5"};
  }
  const auto z = race::parse_zero_table(doc, t);
  for (int j = 1; j < 10; ++j) {
    CHECK(z.ordinates(j).front() == doctest::Approx(j + 0.5));
    // chi_j(2) = e^{2 pi i j/10} is what identifies the label.
    CHECK(t.exponent(j, 2) == j);
  }
  doc["characters"][0]["index"] = 1;
  CHECK_THROWS_AS(race::parse_zero_table(doc, t), race::DataError);
}

TEST_CASE("signed storage serves the conjugate's zeros as negated ordinates") {
  const race::CharacterTable t(11);
  json doc = {{"modulus", 11}, {"labeling", "paper"}, {"storage", "signed_pairs"}};
  doc["characters"] = json::array();
  // chi_7 given on both sides of the axis stands in for chi_3 as well.
  for (int j : {1, 2, 4, 5, 7}) {
    json zs = j == 5 ? json{"-14.5", "14.5"}
                     : json{"-" + std::to_string(j + 10) + ".25", std::to_string(j) + ".75"};
    doc["characters"].push_back({{"index", j}, {"t_max", "30"}, {"zeros", zs}});
  }
  const auto z = race::parse_zero_table(doc, t);
  CHECK(z.ordinates(7).front() == doctest::Approx(7.75));
  CHECK(z.ordinates(3).front() == doctest::Approx(17.25));
  CHECK(z.ordinates(9).front() == doctest::Approx(11.25));
  CHECK(z.ordinates(5) == std::vector<double>{14.5});

  doc["characters"][3]["zeros"] = {"-14.0", "5.75"};  // asymmetric real character
  CHECK_THROWS_AS(race::parse_zero_table(doc, t), race::DataError);
}

TEST_CASE("constants file accepts either raw input and checks consistency") {
  const race::CharacterTable t(11);
  json doc = {{"modulus", 11}, {"accuracy", "1e-12"}};
  doc["values"] = json::array();
  for (int j = 1; j < 10; ++j) doc["values"].push_back({{"index", j}, {"neg_b1_tilde_zero", "0.5"}});
  CHECK(race::parse_constants(doc, t).neg_b1_tilde(4) == 0.5);

  doc["values"][8]["neg_b1_tilde_zero"] = "0.6";  // chi_9 disagrees with conj chi_1
  CHECK_THROWS_AS(race::parse_constants(doc, t), race::DataError);

  doc["values"][8]["neg_b1_tilde_zero"] = "0.5";
  doc["values"][2]["neg_b1_tilde_zero"] = "-0.1";
  CHECK_THROWS_AS(race::parse_constants(doc, t), race::DataError);
}

TEST_CASE("dataset selection by height") {
  CHECK_NOTHROW(race::load_dataset(RACE_TEST_DATA_DIR, 11, 1000));
  CHECK_THROWS_AS(race::load_dataset(RACE_TEST_DATA_DIR, 11, 1e7), race::DataError);
  CHECK_THROWS_AS(desk().zeros.ordinates_below(1, 1e6), race::DataError);
}
