#pragma once

#include <cmath>
#include <fstream>
#include <string>

#include "json.hpp"
#include "race/zerodata.hpp"

namespace test_support {

/// Desk-profile dataset shipped in data/, loaded once per process.
inline const race::Dataset& desk() {
  static const race::Dataset d = race::load_dataset(RACE_TEST_DATA_DIR, 11, 2500);
  return d;
}

inline const nlohmann::json& oracles() {
  static const nlohmann::json doc = [] {
    std::ifstream in(std::string(RACE_TEST_FIXTURE_DIR) + "/oracles_q11.json");
    return nlohmann::json::parse(in);
  }();
  return doc;
}

inline double num(const nlohmann::json& v) { return std::stod(v.get<std::string>()); }

}  // namespace test_support
