#include "race/errbounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "race/error.hpp"
#include "race/numerics.hpp"

namespace race {

namespace {

constexpr double kPi = std::numbers::pi;

double floor_decimal(double x, int digits) {
  if (digits < 0) return x;
  const double s = std::pow(10.0, digits);
  return std::floor(round_down(x) * s) / s;
}

double ceil_decimal(double x, int digits) {
  if (digits < 0) return x;
  const double s = std::pow(10.0, digits);
  return std::ceil(round_up(x) * s) / s;
}

// Upward slack for a closed form built from `stages` roundings.
double up(double x, int stages) { return x * (1.0 + stages * kRoundingSlack); }

}  // namespace

TailBoundParams tail_bound_params(const AlphaSequence& alpha, double w_min,
                                  TailRounding rounding) {
  if (!(w_min > 0)) throw ConfigError("tail_bound_params: w_min must be positive");
  const auto& ps = alpha.partial_sums;
  std::size_t k0 = 0;
  while (k0 + 1 < ps.size() && ps[k0 + 1] < w_min / 2) ++k0;
  if (k0 + 1 >= ps.size())
    throw DataError("tail_bound_params: the tabulated alpha sequence never reaches w_min/2");
  TailBoundParams p;
  p.w_min = w_min;
  p.k0 = k0;
  p.tail_squares = alpha.tail_squares_upper(k0);
  if (!(p.tail_squares > 0)) throw DataError("tail_bound_params: empty tail of squares");
  p.B_exact = round_up(2.0 * alpha.r[k0]);
  p.A_exact = round_down(0.1875 / p.tail_squares);
  p.A = floor_decimal(p.A_exact, rounding.a_digits);
  p.B = ceil_decimal(p.B_exact, rounding.b_digits);
  if (!(p.A > 0)) throw ConfigError("tail_bound_params: rounding left A = 0");
  return p;
}

double tail_probability_bound(const TailBoundParams& p, double w) {
  if (w < p.w_min) return 1.0;
  const double s = w - p.B;
  return std::min(1.0, up(std::exp(-p.A * s * s), 4));
}

double e1_ratio(double eps, const TailBoundParams& p) {
  const double step = 2 * kPi / eps;
  return up(std::exp(-p.A * step * (3 * step - 2 * p.B)), 4);
}

double bound_E1(double eps, const TailBoundParams& p) {
  if (!(eps > 0 && eps < 1)) throw ConfigError("bound_E1: eps must lie in (0, 1)");
  const double step = 2 * kPi / eps;
  if (step < p.w_min)
    throw ConfigError("bound_E1: 2 pi/eps = " + std::to_string(step) + " is below w_min");
  const double rho = e1_ratio(eps, p);
  if (!(rho < 1)) throw ConfigError("bound_E1: geometric ratio is not below 1");
  const double s = step - p.B;
  const double head = std::exp(-p.A * s * s);
  const double one_minus = 1.0 - rho;
  return up(8 * kPi * kPi * (2 - rho) / (one_minus * one_minus) * head, 10);
}

E2Params E2Params::uniform(int modulus, double b, double c, double c_plus, double c_minus,
                           double e_plus, double e_minus, double e) {
  E2Params p;
  p.b = b;
  p.c = c;
  p.c_plus = c_plus;
  p.c_minus = c_minus;
  const auto n = static_cast<std::size_t>(modulus - 1);
  p.e_plus.assign(n, e_plus);
  p.e_minus.assign(n, e_minus);
  p.e.assign(n, e);
  return p;
}

FBoundCache::FBoundCache(const CharacterTable& table, const ZeroTable& zeros)
    : table_(&table), zeros_(&zeros), cache_(static_cast<std::size_t>(table.order())) {}

double FBoundCache::d(int j, double e) const {
  const double twice = 2 * e;
  const int J = static_cast<int>(std::lround(twice));
  if (std::abs(twice - J) > 1e-12 || J < 0)
    throw ConfigError("decay exponent e must be a nonnegative multiple of 1/2");
  auto& row = cache_.at(static_cast<std::size_t>(j));
  if (row.size() <= static_cast<std::size_t>(J)) row.resize(static_cast<std::size_t>(J) + 1, -1.0);
  double& slot = row[static_cast<std::size_t>(J)];
  if (slot < 0) slot = f_bound_constants(zeros_->ordinates(j), J).d_exact;
  return slot;
}

E2Bound bound_E2(long long a, double eps, double C, const E2Params& p,
                 const CharacterTable& table, const FBoundCache& fb) {
  if (!(p.b > 1)) throw ConfigError("E2: b must exceed 1");
  if (p.c < 0 || p.c > 1 || p.c_plus < 0 || p.c_plus > 1 || p.c_minus < -1 || p.c_minus > 0)
    throw ConfigError("E2: c in [0,1], c+ in [0,1], c- in [-1,0] required");
  if (!(eps > 0)) throw ConfigError("E2: eps must be positive");
  if (C < 1) throw ConfigError("E2: C must be at least 1");
  const double L = std::floor(C / 2) - 1;
  if (!(L > 0)) throw ConfigError("E2: floor(C/2) - 1 must be positive (C >= 4)");

  // Products of d and sums of e over the character subsets, kept in log form.
  double log_d_plus = 0, log_d_minus = 0, log_d_c = 0;
  E2Bound out;
  out.params = p;
  for (int j = 1; j < table.order(); ++j) {
    const double re = table.real_part(j, a);
    const auto ju = static_cast<std::size_t>(j);
    if (re >= p.c_plus) {
      out.e_c_plus += p.e_plus.at(ju);
      log_d_plus += std::log(fb.d(j, p.e_plus.at(ju)));
    }
    if (re <= p.c_minus) {
      out.e_c_minus += p.e_minus.at(ju);
      log_d_minus += std::log(fb.d(j, p.e_minus.at(ju)));
    }
    if (std::abs(re) <= p.c) {
      out.e_c += p.e.at(ju);
      log_d_c += std::log(fb.d(j, p.e.at(ju)));
    }
  }
  if (!(out.e_c > 1))
    throw ConfigError("E2: hypothesis e_c > 1 fails (e_c = " + std::to_string(out.e_c) + ")");

  auto side = [&](double log_d, double e, double shift) {
    // b d/(4e) (1 - 1/b) (eps (1 + shift/b))^{-e} L^{-e}; an empty subset contributes the
    // trivial bound with e = 0, which the closed form cannot express.
    if (e == 0) throw ConfigError("E2: empty character subset for the one-sided ranges");
    const double base = eps * (1 + shift / p.b) * L;
    return std::exp(log_d - e * std::log(base)) * p.b / (4 * e) * (1 - 1 / p.b);
  };
  out.plus = up(side(log_d_plus, out.e_c_plus, p.c_plus), 16);
  out.minus = up(side(log_d_minus, out.e_c_minus, -p.c_minus), 16);
  const double base = eps * (1 - p.c / p.b) * L;
  out.tilde = up(std::exp(log_d_c - out.e_c * std::log(base)) / (out.e_c - 1) *
                     (C / (2 * p.b) + 1),
                 16);
  out.B2 = up(out.plus + out.minus + out.tilde, 2);
  out.E2 = up(4 * out.B2, 1);
  return out;
}

std::map<long long, E2Params> parse_e2_rows(const nlohmann::json& doc, int modulus) {
  try {
    if (doc.at("modulus").get<int>() != modulus)
      throw DataError("E2 parameter file is for modulus " + doc.at("modulus").dump());
    const double b = doc.at("b").get<double>();
    const double c = doc.at("c").get<double>();
    const double e = doc.at("e").get<double>();
    std::map<long long, E2Params> out;
    for (const auto& row : doc.at("rows")) {
      const auto a = row.at("a").get<long long>();
      if (a <= 0 || a >= modulus) throw DataError("E2 parameter row for a non-reduced residue");
      if (!out.emplace(a, E2Params::uniform(modulus, b, c, row.at("c_plus").get<double>(),
                                            row.at("c_minus").get<double>(),
                                            row.at("e_plus").get<double>(),
                                            row.at("e_minus").get<double>(), e))
               .second)
        throw DataError("duplicate E2 parameter row for a = " + std::to_string(a));
    }
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("malformed E2 parameter file: ") + ex.what());
  }
}

std::map<long long, E2Params> load_e2_rows(const std::filesystem::path& path, int modulus) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw DataError("malformed JSON in " + path.string() + ": " + ex.what());
  }
  return parse_e2_rows(doc, modulus);
}

E2Bound suggest_E2(long long a, double eps, double C, const CharacterTable& table,
                   const FBoundCache& fb) {
  static constexpr double kCPlus[] = {0.309, 0.809, 1.0};
  static constexpr double kExps[] = {5.0, 8.5, 9.5, 10.0};
  E2Bound best;
  bool found = false;
  for (double cp : kCPlus)
    for (double cm : kCPlus)
      for (double ep : kExps)
        for (double em : kExps) {
          const auto p = E2Params::uniform(table.modulus(), 4.0, 1.0, cp, -cm, ep, em, 5.0);
          try {
            const auto r = bound_E2(a, eps, C, p, table, fb);
            if (!found || r.B2 < best.B2) {
              best = r;
              found = true;
            }
          } catch (const ConfigError&) {
          }
        }
  if (!found) throw ConfigError("E2: no admissible parameter choice in the search grid");
  return best;
}

double D_factor(double x, double b_hat) {
  const double bx2 = b_hat * x * x;
  if (!(bx2 < 1))
    throw ConfigError("D(x): requires b_hat x^2 < 1, got " + std::to_string(bx2));
  const double den = 1 - bx2;
  return up(bx2 * bx2 / (2 * den * den), 6);
}

double bound_E3_term(double abs_term, const double* x, std::size_t count, double b_hat) {
  if (abs_term == 0) return 0.0;
  double log_prod = 0;
  for (std::size_t i = 0; i < count; ++i) log_prod += std::log1p(D_factor(x[i], b_hat));
  return up(abs_term * std::expm1(up(log_prod, static_cast<int>(count) + 2)), 4);
}

void check_E3_hypothesis(double b_hat, double eps, double C) {
  const double v = round_up(b_hat * eps * eps * C * C);
  if (!(v < 1))
    throw ConfigError("product truncation hypothesis b_hat(T) eps^2 C^2 < 1 fails: " +
                      std::to_string(v));
}

}  // namespace race
