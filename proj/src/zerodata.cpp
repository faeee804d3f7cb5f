#include "race/zerodata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <fstream>
#include <numbers>
#include <string>

#include "race/error.hpp"
#include "race/numerics.hpp"

namespace race {

namespace {

using nlohmann::json;

double parse_decimal(const json& v, const char* what) {
  try {
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      std::size_t used = 0;
      const double x = std::stod(s, &used);
      if (used != s.size()) throw DataError(std::string("trailing characters in ") + what);
      return x;
    }
    if (v.is_number()) return v.get<double>();
  } catch (const std::logic_error&) {
  }
  throw DataError(std::string("malformed decimal for ") + what + ": " + v.dump());
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

// Label translation: the file's index -> paper index j.
int to_paper_index(const std::string& labeling, long long index, const CharacterTable& table) {
  if (labeling == "paper") {
    if (index < 1 || index >= table.order())
      throw DataError("character index " + std::to_string(index) + " is not a nonprincipal label");
    return static_cast<int>(index);
  }
  if (labeling == "conrey") {
    // Conrey chi_n(m) = e^{2 pi i log_g(n) log_g(m)/(q-1)} for the least primitive root g,
    // so chi_n(g) = e^{2 pi i log_g(n)/(q-1)} and the paper index is log_g(n).
    if (index % table.modulus() == 0) throw DataError("Conrey label not coprime to modulus");
    const int j = table.dlog(index);
    if (j == 0) throw DataError("Conrey label 1 is the principal character");
    return j;
  }
  throw DataError("unknown labeling convention '" + labeling + "' (expected paper|conrey)");
}

}  // namespace

ZeroTable::ZeroTable(int modulus, std::vector<std::vector<double>> positive,
                     std::vector<double> t_max, std::string source)
    : modulus_(modulus),
      positive_(std::move(positive)),
      t_max_(std::move(t_max)),
      source_(std::move(source)) {}

const std::vector<double>& ZeroTable::ordinates(int j) const {
  if (j < 1 || j >= static_cast<int>(positive_.size()))
    throw ConfigError("no zero data for character index " + std::to_string(j));
  return positive_[static_cast<std::size_t>(j)];
}

double ZeroTable::t_max(int j) const {
  ordinates(j);
  return t_max_[static_cast<std::size_t>(j)];
}

std::vector<double> ZeroTable::ordinates_below(int j, double T) const {
  if (T > t_max(j))
    throw DataError("zero data for chi_" + std::to_string(j) + " is complete only to " +
                    std::to_string(t_max(j)) + ", requested T = " + std::to_string(T));
  const auto& g = ordinates(j);
  return {g.begin(), std::lower_bound(g.begin(), g.end(), T)};
}

double ZeroTable::min_t_max() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < t_max_.size(); ++j) m = std::min(m, t_max_[j]);
  return m;
}

std::size_t ZeroTable::total_zeros() const {
  std::size_t n = 0;
  for (std::size_t j = 1; j < positive_.size(); ++j) n += positive_[j].size();
  return n;
}

ZeroTable ZeroTable::truncated(double T) const {
  std::vector<std::vector<double>> pos(positive_.size());
  std::vector<double> tm(t_max_.size(), 0.0);
  for (int j = 1; j < static_cast<int>(positive_.size()); ++j) {
    pos[static_cast<std::size_t>(j)] = ordinates_below(j, T);
    tm[static_cast<std::size_t>(j)] = T;
  }
  ZeroTable out(modulus_, std::move(pos), std::move(tm), source_);
  out.set_accuracy(accuracy_);
  return out;
}

ZeroTable parse_zero_table(const json& doc, const CharacterTable& table) {
  if (!doc.is_object() || !doc.contains("modulus") || !doc.contains("characters"))
    throw DataError("zero file: expected object with 'modulus' and 'characters'");
  const int q = doc.at("modulus").get<int>();
  if (q != table.modulus())
    throw DataError("zero file modulus " + std::to_string(q) + " does not match " +
                    std::to_string(table.modulus()));
  const std::string labeling = doc.value("labeling", "paper");
  const std::string storage = doc.value("storage", "per_character");
  if (storage != "per_character" && storage != "signed_pairs")
    throw DataError("unknown storage '" + storage + "' (expected per_character|signed_pairs)");
  const bool signed_pairs = storage == "signed_pairs";

  const auto n = static_cast<std::size_t>(table.order());
  std::vector<std::vector<double>> pos(n);
  std::vector<double> tmax(n, 0.0);
  std::vector<bool> seen(n, false);

  auto assign = [&](int j, std::vector<double> g, double tm) {
    auto ju = static_cast<std::size_t>(j);
    if (seen[ju]) throw DataError("zeros for chi_" + std::to_string(j) + " given twice");
    seen[ju] = true;
    pos[ju] = std::move(g);
    tmax[ju] = tm;
  };

  for (const auto& entry : doc.at("characters")) {
    const int j = to_paper_index(labeling, entry.at("index").get<long long>(), table);
    const double tm = parse_decimal(entry.at("t_max"), "t_max");
    if (!(tm > 0)) throw DataError("t_max must be positive");
    std::vector<double> g;
    g.reserve(entry.at("zeros").size());
    for (const auto& z : entry.at("zeros")) g.push_back(parse_decimal(z, "ordinate"));
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] == 0.0)
        throw DataError("chi_" + std::to_string(j) +
                        " has a zero at gamma = 0, which contradicts the linear independence "
                        "(LI) hypothesis");
      if (std::abs(g[i]) >= tm)
        throw DataError("chi_" + std::to_string(j) + " ordinate above its t_max");
      if (i > 0 && !(g[i] > g[i - 1]))
        throw DataError("chi_" + std::to_string(j) + " ordinates are not strictly increasing");
    }
    const auto first_positive = std::upper_bound(g.begin(), g.end(), 0.0);
    if (!signed_pairs) {
      if (first_positive != g.begin())
        throw DataError("negative ordinate for chi_" + std::to_string(j) +
                        " requires storage = signed_pairs");
      assign(j, std::move(g), tm);
      continue;
    }
    std::vector<double> above(first_positive, g.end());
    std::vector<double> below;
    for (auto it = std::make_reverse_iterator(first_positive); it != g.rend(); ++it)
      below.push_back(-*it);
    const auto chi = table.label(j);
    if (chi.is_real) {
      if (!below.empty() && below != above)
        throw DataError("real chi_" + std::to_string(j) + " ordinates are not symmetric");
      assign(j, std::move(above), tm);
    } else {
      assign(j, std::move(above), tm);
      assign(chi.conjugate_index, std::move(below), tm);
    }
  }
  for (int j = 1; j < table.order(); ++j) {
    if (!seen[static_cast<std::size_t>(j)])
      throw DataError("zero file is missing character chi_" + std::to_string(j));
  }
  ZeroTable out(q, std::move(pos), std::move(tmax), doc.value("source", std::string{}));
  if (doc.contains("accuracy")) {
    const double acc = parse_decimal(doc.at("accuracy"), "accuracy");
    if (!(acc >= 0 && acc <= 1e-9))
      throw DataError("zero file accuracy must be at most 1e-9 absolute");
    out.set_accuracy(acc);
  }
  return out;
}

ZeroTable load_zero_table(const std::filesystem::path& path, const CharacterTable& table) {
  return parse_zero_table(read_json(path), table);
}

json to_json(const ZeroTable& zeros) {
  char buf[40];
  json doc;
  doc["modulus"] = zeros.modulus();
  doc["labeling"] = "paper";
  doc["storage"] = "per_character";
  doc["source"] = zeros.source();
  std::snprintf(buf, sizeof buf, "%.3g", zeros.accuracy());
  doc["accuracy"] = buf;
  json chars = json::array();
  for (int j = 1; j < zeros.modulus() - 1; ++j) {
    json e;
    e["index"] = j;
    std::snprintf(buf, sizeof buf, "%.17g", zeros.t_max(j));
    e["t_max"] = buf;
    json list = json::array();
    for (double g : zeros.ordinates(j)) {
      std::snprintf(buf, sizeof buf, "%.17g", g);
      list.push_back(buf);
    }
    e["zeros"] = std::move(list);
    chars.push_back(std::move(e));
  }
  doc["characters"] = std::move(chars);
  return doc;
}

// ---------------------------------------------------------------------------

AnalyticConstants::AnalyticConstants(int modulus, std::vector<double> neg_b1_tilde,
                                     double accuracy)
    : modulus_(modulus), values_(std::move(neg_b1_tilde)), accuracy_(accuracy) {}

double AnalyticConstants::neg_b1_tilde(int j) const {
  if (j < 1 || j >= static_cast<int>(values_.size()))
    throw ConfigError("no analytic constant for character index " + std::to_string(j));
  return values_[static_cast<std::size_t>(j)];
}

double AnalyticConstants::neg_b1_real(const CharacterTable& table, int j) const {
  if (!table.label(j).is_real)
    throw ConfigError("-b1(0, chi) is one-sided; chi_" + std::to_string(j) + " is not real");
  return 0.5 * neg_b1_tilde(j);
}

double AnalyticConstants::representative_sum(const CharacterTable& table) const {
  const auto part = table.partition();
  CompensatedSum s;
  for (const auto& chi : part.real) s += neg_b1_real(table, chi.index);
  for (const auto& chi : part.paired) s += neg_b1_tilde(chi.index);
  return s.value();
}

double b1_zero_from_logderiv(const CharacterTable& table, int j, double re_logderiv) {
  if (j == 0) throw ConfigError("b1 constant is undefined for the principal character");
  constexpr double euler_gamma = std::numbers::egamma;
  const double parity_term = table.is_even(j) ? 2.0 * std::numbers::ln2 : 0.0;
  return std::log(table.modulus() / std::numbers::pi) - euler_gamma - parity_term +
         2.0 * re_logderiv;
}

AnalyticConstants parse_constants(const json& doc, const CharacterTable& table) {
  if (!doc.is_object() || !doc.contains("values"))
    throw DataError("constants file: expected object with 'values'");
  const int q = doc.at("modulus").get<int>();
  if (q != table.modulus()) throw DataError("constants file modulus mismatch");
  const double accuracy = doc.contains("accuracy") ? parse_decimal(doc.at("accuracy"), "accuracy")
                                                   : 1e-12;
  const std::string labeling = doc.value("labeling", "paper");
  std::vector<double> v(static_cast<std::size_t>(table.order()), -1.0);
  for (const auto& entry : doc.at("values")) {
    const int j = to_paper_index(labeling, entry.at("index").get<long long>(), table);
    double value = 0.0;
    if (entry.contains("neg_b1_tilde_zero"))
      value = parse_decimal(entry.at("neg_b1_tilde_zero"), "neg_b1_tilde_zero");
    else if (entry.contains("re_logderiv_at_1"))
      value = b1_zero_from_logderiv(table, j,
                                    parse_decimal(entry.at("re_logderiv_at_1"), "re_logderiv_at_1"));
    else
      throw DataError("constants entry needs neg_b1_tilde_zero or re_logderiv_at_1");
    if (!(value > 0))
      throw DataError("constant for chi_" + std::to_string(j) + " must be positive");
    v[static_cast<std::size_t>(j)] = value;
  }
  // Conjugates share the paired sum; fill from whichever is present.
  for (int j = 1; j < table.order(); ++j) {
    auto& mine = v[static_cast<std::size_t>(j)];
    const double other = v[static_cast<std::size_t>(table.label(j).conjugate_index)];
    if (mine < 0 && other > 0) mine = other;
    if (mine < 0) throw DataError("constants file is missing chi_" + std::to_string(j));
    if (std::abs(mine - other) > 2 * accuracy + 1e-14)
      throw DataError("constants for chi_" + std::to_string(j) + " and its conjugate disagree");
  }
  return {q, std::move(v), accuracy};
}

AnalyticConstants load_constants(const std::filesystem::path& path, const CharacterTable& table) {
  return parse_constants(read_json(path), table);
}

// ---------------------------------------------------------------------------

double AlphaSequence::tail_squares_upper(std::size_t K) const {
  if (K > r.size())
    throw DataError("alpha sequence: only " + std::to_string(r.size()) +
                    " tabulated values, requested K = " + std::to_string(K));
  if (K > 0 && !(r[K - 1] > untabulated_cap))
    throw DataError("alpha sequence: r_K is not separated from untabulated zeros");
  CompensatedSum head;
  for (std::size_t k = 0; k < K; ++k) head += r[k] * r[k];
  const double t = total_squares_upper - round_down(head.value());
  return round_up(std::max(t, 0.0));
}

AlphaSequence alpha_sequence(const ZeroTable& zeros, const AnalyticConstants& constants,
                             const CharacterTable& table) {
  const double tmin = zeros.min_t_max();
  if (tmin < 10) throw DataError("zero table must be complete to height >= 10");
  AlphaSequence out;
  for (int j = 1; j < table.order(); ++j) {
    for (double g : zeros.ordinates_below(j, tmin)) out.r.push_back(2.0 / std::sqrt(0.25 + g * g));
  }
  std::sort(out.r.begin(), out.r.end(), std::greater<>());
  out.partial_sums.assign(out.r.size() + 1, 0.0);
  for (std::size_t k = 0; k < out.r.size(); ++k)
    out.partial_sums[k + 1] = out.partial_sums[k] + out.r[k];
  const double quarter = constants.representative_sum(table);
  const double count = table.order() - 1;
  out.total_squares_upper = round_up(4.0 * (quarter + count * constants.accuracy()));
  out.untabulated_cap = 2.0 / std::sqrt(0.25 + tmin * tmin);
  return out;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("RACE_DENSITY_DATA"); env != nullptr && *env != '\0')
    return env;
#ifdef RACE_DEFAULT_DATA_DIR
  return RACE_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

Dataset load_dataset(const std::filesystem::path& dir, int q, double T) {
  namespace fs = std::filesystem;
  Dataset ds{CharacterTable(q), {}, {}, {}, {}};
  if (!fs::is_directory(dir)) throw DataError("data directory not found: " + dir.string());
  const std::string prefix = "zeros_q" + std::to_string(q) + "_t";
  double best = std::numeric_limits<double>::infinity();
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) != 0 || entry.path().extension() != ".json") continue;
    const std::string height = name.substr(prefix.size(), name.size() - prefix.size() - 5);
    char* end = nullptr;
    const double h = std::strtod(height.c_str(), &end);
    if (end == height.c_str() || *end != '\0') continue;
    if (h >= T && h < best) {
      best = h;
      ds.zeros_path = entry.path();
    }
  }
  if (ds.zeros_path.empty())
    throw DataError("no zero file " + prefix + "<H>.json with H >= " + std::to_string(T) +
                    " in " + dir.string());
  ds.constants_path = dir / ("constants_q" + std::to_string(q) + ".json");
  ds.zeros = load_zero_table(ds.zeros_path, ds.table);
  ds.constants = load_constants(ds.constants_path, ds.table);
  return ds;
}

double expected_zero_count(int modulus, double T) {
  const double two_pi = 2.0 * std::numbers::pi;
  return T / two_pi * std::log(modulus * T / (two_pi * std::numbers::e));
}

std::vector<ZeroCountCheck> zero_count_sanity(const ZeroTable& zeros) {
  std::vector<ZeroCountCheck> out;
  for (int j = 1; j < zeros.modulus() - 1; ++j) {
    const auto& g = zeros.ordinates(j);
    const double tm = zeros.t_max(j);
    for (double T = 50.0; T <= tm; T *= 2.0) {
      const auto n = static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), T) - g.begin());
      const double e = expected_zero_count(zeros.modulus(), T);
      out.push_back({j, T, n, e, std::abs(static_cast<double>(n) - e) <= 0.1 * e});
    }
  }
  return out;
}

}  // namespace race
