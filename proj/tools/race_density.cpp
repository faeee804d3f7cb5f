#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "race/density.hpp"
#include "race/error.hpp"
#include "race/mcoracle.hpp"
#include "race/model.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "race-density/1";

enum class Format { json, csv };

struct Common {
  int q = 11;
  std::string data_dir;
  Format format = Format::json;
  int workers = 0;
};

struct DensityArgs {
  std::vector<long long> a;
  bool all = false;
  double eps = 0.2;
  double C = 100;
  std::optional<double> T;
  std::string profile = "desk";
  std::string order = "natural";
  std::string kernel = "fast";
  std::string e2_params;
};

struct ModelArgs {
  bool l2 = false;
  std::optional<int> k;
  bool no_delta = false;
  std::optional<double> T;
  std::string profile = "desk";
};

struct McArgs {
  std::vector<long long> a{2};
  double T = 1000;
  std::uint64_t N = 1'000'000;
  std::uint64_t seed = 42;
  bool antithetic = false;
  std::string sampler = "fast";
  std::vector<double> thresholds;
};

struct ValidateArgs {
  std::vector<std::string> files;
};

fs::path data_dir(const Common& c) {
  return c.data_dir.empty() ? race::default_data_dir() : fs::path(c.data_dir);
}

double profile_height(const std::string& profile, const std::optional<double>& T) {
  if (T) return *T;
  if (profile == "paper") return 10000;
  std::cerr << "note: desk profile (T = 2500); the full-precision table needs --profile paper "
               "with zero data to height 10^4\n";
  return 2500;
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << '\n'; }

ordered_json envelope(const std::string& command, ordered_json config) {
  ordered_json out;
  out["schema"] = kSchema;
  out["command"] = command;
  out["config"] = std::move(config);
  return out;
}

ordered_json provenance(const race::Dataset& d) {
  return {{"zeros", d.zeros_path.filename().string()},
          {"zeros_source", d.zeros.source()},
          {"zeros_accuracy", d.zeros.accuracy()},
          {"zeros_complete_to", d.zeros.min_t_max()},
          {"constants", d.constants_path.filename().string()},
          {"constants_accuracy", d.constants.accuracy()}};
}

std::string fmt(double x, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::optional<std::map<long long, race::E2Params>> e2_rows(const Common& c,
                                                           const std::string& explicit_path) {
  if (explicit_path == "auto") return std::nullopt;
  const fs::path p = explicit_path.empty()
                         ? data_dir(c) / ("e2_params_q" + std::to_string(c.q) + ".json")
                         : fs::path(explicit_path);
  if (explicit_path.empty() && !fs::exists(p)) return std::nullopt;
  return race::load_e2_rows(p, c.q);
}

// Residues in output order: natural 2..q-1, or g^1, ..., g^{q-2} for "powers-of:<g>" where
// "powers-of:g" picks the generator attached to the lowest zero.
std::vector<long long> ordered_residues(const std::string& order, const race::Dataset& d) {
  const int q = d.table.modulus();
  std::vector<long long> out;
  if (order == "natural") {
    for (long long a = 2; a < q; ++a) out.push_back(a);
    return out;
  }
  const std::string prefix = "powers-of:";
  if (order.rfind(prefix, 0) != 0)
    throw race::ConfigError("--order must be 'natural' or 'powers-of:<g>'");
  const std::string g_text = order.substr(prefix.size());
  long long g = 0;
  if (g_text == "g") {
    g = race::variance_decomposition(d.table, d.zeros, d.constants).generator;
  } else {
    try {
      g = std::stoll(g_text);
    } catch (const std::exception&) {
      throw race::ConfigError("--order: cannot parse generator '" + g_text + "'");
    }
  }
  g %= q;
  if (g <= 0) throw race::ConfigError("--order: generator must be a unit mod q");
  const int k = d.table.dlog(g);
  if (std::gcd(k, d.table.order()) != 1)
    throw race::ConfigError("--order: " + std::to_string(g) + " is not a primitive root mod " +
                            std::to_string(q));
  long long x = g;
  for (int i = 1; i < d.table.order(); ++i) {
    out.push_back(x);
    x = x * g % q;
  }
  return out;
}

int cmd_density(const Common& c, const DensityArgs& args) {
  race::RunConfig cfg;
  cfg.q = c.q;
  cfg.eps = args.eps;
  cfg.C = args.C;
  cfg.T = profile_height(args.profile, args.T);
  cfg.workers = c.workers;
  cfg.kernel = args.kernel == "reference" ? race::Kernel::reference : race::Kernel::fast;
  const auto data = race::load_dataset(data_dir(c), c.q, cfg.T);

  std::vector<long long> residues;
  if (args.all || args.a.empty()) {
    residues = ordered_residues(args.order, data);
  } else {
    for (long long a : args.a) residues.push_back(a);
  }
  const auto rows = e2_rows(c, args.e2_params);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<race::DensityResult> results;
  if (rows) {
    // Per-residue parameter rows: one run per residue.
    for (long long a : residues) {
      race::RunConfig one = cfg;
      one.a = a;
      const auto it = rows->find(((a % c.q) + c.q) % c.q);
      if (it != rows->end()) one.e2 = it->second;
      results.push_back(race::compute_delta(one, data));
    }
  } else {
    results = race::compute_deltas(cfg, data, residues);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (c.format == Format::csv) {
    std::cout << "a,delta_pp,error_radius,lower,upper,S,e1,e2,e3,float_error,data_sensitivity\n";
    for (const auto& r : results)
      std::cout << r.a << ',' << fmt(r.delta_pp, "%.10f") << ',' << fmt(r.error_radius, "%.3e")
                << ',' << fmt(r.delta_pp - r.error_radius, "%.10f") << ','
                << fmt(r.delta_pp + r.error_radius, "%.10f") << ',' << fmt(r.S, "%.10f") << ','
                << fmt(r.e1, "%.3e") << ',' << fmt(r.e2, "%.3e") << ',' << fmt(r.e3, "%.3e")
                << ',' << fmt(r.float_error, "%.3e") << ',' << fmt(r.data_sensitivity, "%.3e")
                << '\n';
    return 0;
  }
  auto out = envelope("density", {{"q", c.q},
                                   {"eps", cfg.eps},
                                   {"C", cfg.C},
                                   {"T", cfg.T},
                                   {"order", args.order},
                                   {"kernel", args.kernel},
                                   {"e2_parameters", rows ? "rows" : "search"}});
  out["results"] = ordered_json::array();
  for (const auto& r : results) {
    const auto v = race::delta_variants(r);
    out["results"].push_back({{"a", r.a},
                              {"delta_pp", r.delta_pp},
                              {"error_radius", r.error_radius},
                              {"delta_mm", v.mm},
                              {"delta_pm", v.pm},
                              {"delta_mp", v.mp},
                              {"S", r.S}});
  }
  out["certificates"] = ordered_json::array();
  for (const auto& r : results) {
    const auto& p = r.e2_detail.params;
    out["certificates"].push_back(
        {{"a", r.a},
         {"e1", r.e1},
         {"e2", r.e2},
         {"e3", r.e3},
         {"float_error", r.float_error},
         {"data_sensitivity", r.data_sensitivity},
         {"b_hat", r.b_hat},
         {"tail", {{"A", r.tail.A}, {"B", r.tail.B}, {"k0", r.tail.k0}}},
         {"e2_parameters",
          {{"b", p.b}, {"c", p.c}, {"c_plus", p.c_plus}, {"c_minus", p.c_minus},
           {"B2_plus", r.e2_detail.plus}, {"B2_minus", r.e2_detail.minus},
           {"B2_tilde", r.e2_detail.tilde}}}});
  }
  out["provenance"] = provenance(data);
  out["volatile"] = {{"seconds", seconds}};
  emit(out);
  return 0;
}

int cmd_model(const Common& c, const ModelArgs& args) {
  const double T = profile_height(args.profile, args.T);
  const auto data = race::load_dataset(data_dir(c), c.q, T);
  const auto p = race::variance_decomposition(data.table, data.zeros, data.constants);

  if (args.k) {
    const double v = race::model_quadrant_probability(*args.k, p);
    if (c.format == Format::csv) {
      std::cout << "k,model\n" << *args.k << ',' << fmt(v, "%.6f") << '\n';
    } else {
      auto out = envelope("model", {{"q", c.q}, {"k", *args.k}});
      out["results"] = {{"k", *args.k}, {"model", v}};
      emit(out);
    }
    return 0;
  }

  const int n = data.table.order() - 1;
  std::vector<long long> residues;
  long long x = p.generator;
  for (int k = 1; k <= n; ++k) {
    residues.push_back(x);
    x = x * p.generator % c.q;
  }
  std::vector<double> model(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k)
    model[static_cast<std::size_t>(k - 1)] = race::model_quadrant_probability(k, p);

  std::vector<race::DensityResult> deltas;
  const bool want_delta = !args.no_delta || args.l2;
  if (want_delta) {
    race::RunConfig cfg;
    cfg.q = c.q;
    cfg.T = T;
    cfg.workers = c.workers;
    deltas = race::compute_deltas(cfg, data, residues);
  }
  // Rows k > (q-1)/2 repeat rows q-1-k, so the error uses k = 1..(q-1)/2 only.
  std::optional<double> l2;
  if (want_delta) {
    const auto half = static_cast<std::size_t>(data.table.order() / 2);
    std::vector<double> m(model.begin(), model.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<double> d;
    for (std::size_t i = 0; i < half; ++i) d.push_back(deltas[i].delta_pp);
    l2 = race::relative_l2_error(m, d);
  }

  if (args.l2) {
    if (c.format == Format::csv) {
      std::cout << "relative_l2\n" << fmt(*l2, "%.6f") << '\n';
    } else {
      auto out = envelope("model", {{"q", c.q}, {"T", T}, {"l2", true}});
      out["results"] = {{"relative_l2", *l2}};
      out["provenance"] = provenance(data);
      emit(out);
    }
    return 0;
  }

  if (c.format == Format::csv) {
    std::cout << "k,a,delta_pp,error_radius,model,difference\n";
    for (int k = 1; k <= n; ++k) {
      const auto i = static_cast<std::size_t>(k - 1);
      std::cout << k << ',' << residues[i] << ',';
      if (want_delta)
        std::cout << fmt(deltas[i].delta_pp, "%.8f") << ',' << fmt(deltas[i].error_radius, "%.3e")
                  << ',';
      else
        std::cout << ",,";
      std::cout << fmt(model[i], "%.6f") << ',';
      if (want_delta) std::cout << fmt(model[i] - deltas[i].delta_pp, "%.6f");
      std::cout << '\n';
    }
    return 0;
  }
  auto out = envelope("model", {{"q", c.q}, {"T", T}});
  out["parameters"] = {{"low_character", p.low_character},
                       {"gamma1", p.gamma1},
                       {"top_coefficient", p.top_coefficient},
                       {"top_variance", p.top_variance},
                       {"total_variance", p.total_variance},
                       {"residual_variance", p.residual_variance},
                       {"generator", p.generator}};
  out["results"] = ordered_json::array();
  for (int k = 1; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    ordered_json row = {{"k", k}, {"a", residues[i]}, {"model", model[i]}};
    if (want_delta) {
      row["delta_pp"] = deltas[i].delta_pp;
      row["error_radius"] = deltas[i].error_radius;
      row["difference"] = model[i] - deltas[i].delta_pp;
    }
    out["results"].push_back(row);
  }
  if (l2) out["relative_l2"] = *l2;
  out["provenance"] = provenance(data);
  emit(out);
  return 0;
}

int cmd_bounds(const Common& c, const DensityArgs& args) {
  race::RunConfig cfg;
  cfg.q = c.q;
  cfg.eps = args.eps;
  cfg.C = args.C;
  cfg.T = profile_height(args.profile, args.T);
  cfg.workers = c.workers;
  const auto data = race::load_dataset(data_dir(c), c.q, cfg.T);
  race::validate_config(cfg, data);
  const auto alpha = race::alpha_sequence(data.zeros, data.constants, data.table);
  const auto tail = race::tail_bound_params(alpha, 2 * std::numbers::pi, cfg.tail_rounding);
  const double e1 = race::bound_E1(cfg.eps, tail);
  const auto rows = e2_rows(c, args.e2_params);
  race::FBoundCache fb(data.table, data.zeros);

  std::vector<long long> residues = args.a;
  if (residues.empty() || args.all)
    residues = ordered_residues(args.order, data);

  const auto factors =
      race::truncated_factors(data.table, cfg.T, data.zeros, data.constants, false);
  struct Row {
    long long a;
    race::E2Bound e2;
    double e3;
  };
  std::vector<Row> out_rows;
  for (long long a : residues) {
    race::RunConfig one = cfg;
    one.a = a;
    std::optional<race::E2Params> p;
    if (rows) {
      const auto it = rows->find(((a % c.q) + c.q) % c.q);
      if (it != rows->end()) p = it->second;
    }
    const auto e2 = p ? race::bound_E2(a, cfg.eps, cfg.C, *p, data.table, fb)
                      : race::suggest_E2(a, cfg.eps, cfg.C, data.table, fb);
    const auto s = race::compute_S_and_E3(one, data.table, factors, data.zeros.accuracy());
    out_rows.push_back({a, e2, s.E3});
  }

  if (c.format == Format::csv) {
    std::cout << "a,e1,B2,e2,e3\n";
    for (const auto& r : out_rows)
      std::cout << r.a << ',' << fmt(e1, "%.3e") << ',' << fmt(r.e2.B2, "%.4e") << ','
                << fmt(r.e2.E2, "%.4e") << ',' << fmt(r.e3, "%.3e") << '\n';
    return 0;
  }
  auto out = envelope("bounds", {{"q", c.q}, {"eps", cfg.eps}, {"C", cfg.C}, {"T", cfg.T}});
  out["tail"] = {{"A", tail.A}, {"B", tail.B}, {"k0", tail.k0},
                 {"A_exact", tail.A_exact}, {"B_exact", tail.B_exact},
                 {"tail_squares", tail.tail_squares}};
  out["results"] = ordered_json::array();
  for (const auto& r : out_rows)
    out["results"].push_back({{"a", r.a},
                              {"e1", e1},
                              {"B2", r.e2.B2},
                              {"B2_plus", r.e2.plus},
                              {"B2_minus", r.e2.minus},
                              {"B2_tilde", r.e2.tilde},
                              {"e2", r.e2.E2},
                              {"e3", r.e3}});
  out["provenance"] = provenance(data);
  emit(out);
  return 0;
}

int cmd_mc(const Common& c, const McArgs& args) {
  const auto data = race::load_dataset(data_dir(c), c.q, args.T);
  race::SampleSpec spec;
  spec.residues = args.a;
  spec.T = args.T;
  spec.N = args.N;
  spec.seed = args.seed;
  spec.antithetic = args.antithetic;
  spec.workers = c.workers;
  spec.sampler = args.sampler == "reference" ? race::Sampler::reference : race::Sampler::fast;
  if (!args.thresholds.empty()) spec.thresholds = args.thresholds;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = race::sample_X(spec, data.table, data.zeros);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  static constexpr const char* kQuadrants[] = {"pp", "pm", "mp", "mm"};
  if (c.format == Format::csv) {
    std::cout << "a,quadrant,count,frequency,standard_error\n";
    for (const auto& e : r.estimates)
      for (int k = 0; k < 4; ++k)
        std::cout << e.a << ',' << kQuadrants[k] << ',' << e.counts[static_cast<std::size_t>(k)]
                  << ',' << fmt(e.frequency(k), "%.8f") << ','
                  << fmt(e.standard_error(k), "%.3e") << '\n';
    return 0;
  }
  auto out = envelope("mc", {{"q", c.q},
                              {"T", spec.T},
                              {"N", spec.N},
                              {"seed", spec.seed},
                              {"antithetic", spec.antithetic},
                              {"sampler", args.sampler}});
  out["results"] = ordered_json::array();
  for (const auto& e : r.estimates) {
    ordered_json row = {{"a", e.a}, {"N", e.N}};
    for (int k = 0; k < 4; ++k)
      row[kQuadrants[k]] = {{"count", e.counts[static_cast<std::size_t>(k)]},
                            {"frequency", e.frequency(k)},
                            {"standard_error", e.standard_error(k)}};
    row["exceedances"] = ordered_json::array();
    for (const auto& x : e.exceedances)
      row["exceedances"].push_back({{"w", x.w}, {"count_x1", x.count_x1}, {"count_x2", x.count_x2}});
    out["results"].push_back(row);
  }
  out["moments"] = {{"mean_x1", r.mean_x1},
                    {"variance_x1", r.variance_x1},
                    {"expected_variance", r.expected_variance},
                    {"zeros_used", r.zeros_used}};
  out["provenance"] = provenance(data);
  out["volatile"] = {{"seconds", seconds}};
  emit(out);
  return 0;
}

ordered_json validate_zero_file(const race::ZeroTable& z, const race::CharacterTable& table) {
  ordered_json chars = ordered_json::array();
  for (int j = 1; j < table.order(); ++j) {
    const auto& g = z.ordinates(j);
    chars.push_back({{"chi", j},
                     {"zeros", g.size()},
                     {"t_max", z.t_max(j)},
                     {"lowest", g.empty() ? 0.0 : g.front()}});
  }
  ordered_json sanity = ordered_json::array();
  bool ok = true;
  for (const auto& s : race::zero_count_sanity(z)) {
    ok = ok && s.ok;
    if (!s.ok)
      sanity.push_back({{"chi", s.index}, {"height", s.height}, {"counted", s.counted},
                        {"expected", s.expected}});
  }
  return {{"kind", "zeros"},
          {"modulus", z.modulus()},
          {"accuracy", z.accuracy()},
          {"total_zeros", z.total_zeros()},
          {"characters", chars},
          {"zero_count_sanity", ok ? "OK" : "WARN"},
          {"zero_count_outliers", sanity}};
}

int cmd_validate(const Common& c, const ValidateArgs& args) {
  const race::CharacterTable table(c.q);
  std::vector<fs::path> files;
  for (const auto& f : args.files) files.emplace_back(f);
  if (files.empty()) {
    for (const auto& e : fs::directory_iterator(data_dir(c))) {
      const auto name = e.path().filename().string();
      const std::string q = "_q" + std::to_string(c.q);
      if (e.path().extension() == ".json" && name.find(q) != std::string::npos)
        files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  }
  auto out = envelope("validate", {{"q", c.q}});
  out["results"] = ordered_json::array();
  std::optional<race::AnalyticConstants> constants;
  std::vector<race::ZeroTable> zero_tables;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw race::DataError("cannot open " + f.string());
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw race::DataError("malformed JSON in " + f.string() + ": " + e.what());
    }
    ordered_json rep;
    if (doc.contains("characters")) {
      zero_tables.push_back(race::parse_zero_table(doc, table));
      rep = validate_zero_file(zero_tables.back(), table);
    } else if (doc.contains("values")) {
      constants = race::parse_constants(doc, table);
      ordered_json vals = ordered_json::array();
      for (int j = 1; j < table.order(); ++j)
        vals.push_back({{"chi", j}, {"neg_b1_tilde", constants->neg_b1_tilde(j)}});
      rep = {{"kind", "constants"}, {"accuracy", constants->accuracy()}, {"values", vals}};
    } else if (doc.contains("rows")) {
      const auto rows = race::parse_e2_rows(doc, c.q);
      rep = {{"kind", "e2_parameters"}, {"rows", rows.size()}};
    } else {
      throw race::DataError(f.string() + ": unrecognised data file");
    }
    rep["file"] = f.filename().string();
    rep["status"] = "OK";
    out["results"].push_back(rep);
  }
  // Cross-check: every tabulated sum must stay below its analytic total.
  if (constants) {
    for (const auto& z : zero_tables) {
      const auto factors =
          race::truncated_factors(table, z.min_t_max(), z, *constants, false);
      out["consistency"].push_back(
          {{"height", z.min_t_max()}, {"b_hat", race::b_hat(factors)}, {"status", "OK"}});
    }
  }
  emit(out);
  return 0;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--q", c.q, "prime modulus")->capture_default_str();
  sub->add_option("--data", c.data_dir, "data directory (default: $RACE_DENSITY_DATA)");
  sub->add_option("--format", c.format, "output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}}));
  sub->add_option("--workers", c.workers, "worker threads (0 = all)")->capture_default_str();
}

void add_run_options(CLI::App* sub, DensityArgs& d) {
  sub->add_option("--a", d.a, "residue(s) a");
  sub->add_flag("--all", d.all, "every residue 2..q-1");
  sub->add_option("--eps", d.eps, "lattice spacing")->capture_default_str();
  sub->add_option("--C", d.C, "lattice cutoff")->capture_default_str();
  sub->add_option("--T", d.T, "zero truncation height (overrides --profile)");
  sub->add_option("--profile", d.profile, "desk (T=2500) or paper (T=10^4)")
      ->check(CLI::IsMember({"desk", "paper"}))
      ->capture_default_str();
  sub->add_option("--order", d.order, "natural | powers-of:<g> | powers-of:g")
      ->capture_default_str();
  sub->add_option("--e2-params", d.e2_params,
                  "E2 parameter rows (default: data dir file if present; 'auto' = search)");
}

int run(int argc, char** argv) {
  CLI::App app{"Certified logarithmic densities for two-way prime number races"};
  app.require_subcommand(1);
  Common common;
  DensityArgs dens, bnd;
  ModelArgs model;
  McArgs mc;
  ValidateArgs val;

  auto* d = app.add_subcommand("density", "compute delta_a^{++} with certified radius");
  add_common(d, common);
  add_run_options(d, dens);
  d->add_option("--kernel", dens.kernel, "lattice evaluator")
      ->check(CLI::IsMember({"fast", "reference"}))
      ->capture_default_str();

  auto* m = app.add_subcommand("model", "single-low-zero model probabilities");
  add_common(m, common);
  m->add_flag("--l2", model.l2, "print the relative l2 error against computed densities");
  m->add_option("--k", model.k, "single rotation index k");
  m->add_flag("--no-delta", model.no_delta, "skip the density computation");
  m->add_option("--T", model.T, "zero truncation height for the density column");
  m->add_option("--profile", model.profile)->check(CLI::IsMember({"desk", "paper"}));

  auto* v = app.add_subcommand("validate", "check data files against schema and invariants");
  add_common(v, common);
  v->add_option("files", val.files, "files (default: every data file for q)");

  auto* s = app.add_subcommand("mc", "Monte-Carlo quadrant frequencies");
  add_common(s, common);
  s->add_option("--a", mc.a, "residue(s) a")->capture_default_str();
  s->add_option("--T", mc.T, "zero truncation height")->capture_default_str();
  s->add_option("--N", mc.N, "sample count")->capture_default_str();
  s->add_option("--seed", mc.seed, "generator key")->capture_default_str();
  s->add_flag("--antithetic", mc.antithetic, "pair each sample with its negation");
  s->add_option("--sampler", mc.sampler)->check(CLI::IsMember({"fast", "reference"}));
  s->add_option("--threshold", mc.thresholds, "tail thresholds w");

  auto* b = app.add_subcommand("bounds", "E1, E2 and E3 budgets without the density");
  add_common(b, common);
  add_run_options(b, bnd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (common.workers < 0) throw race::ConfigError("--workers must be nonnegative");

  if (d->parsed()) return cmd_density(common, dens);
  if (m->parsed()) return cmd_model(common, model);
  if (v->parsed()) return cmd_validate(common, val);
  if (s->parsed()) return cmd_mc(common, mc);
  return cmd_bounds(common, bnd);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const race::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const race::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const race::AccuracyError& e) {
    std::cerr << "accuracy failure: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
