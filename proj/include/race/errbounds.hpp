#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <vector>

#include "json.hpp"

#include "race/charfn.hpp"
#include "race/characters.hpp"
#include "race/zerodata.hpp"

namespace race {

/// P(X_i >= w) <= exp(-A (w - B)^2) for every w >= w_min.
struct TailBoundParams {
  double A = 0.0;
  double B = 0.0;
  double w_min = 0.0;
  /// k0: number of leading r_k absorbed into the shift B = 2 r_{k0+1}.
  std::size_t k0 = 0;
  /// Certified upper bound for sum_{k > k0} r_k^2.
  double tail_squares = 0.0;
  /// Unrounded A and B (before the decimal rounding).
  double A_exact = 0.0;
  double B_exact = 0.0;
};

/// Decimal rounding applied to the tail constants: A is floored to a_digits decimals,
/// B is ceiled to b_digits decimals. Negative digit counts disable the rounding.
struct TailRounding {
  int a_digits = 3;
  int b_digits = 2;
};

/// Montgomery-type tail bound. k0 is the largest K with r_1 + ... + r_K < w_min/2; then
/// B = 2 r_{k0+1} and A = (3/16) / sum_{k > k0} r_k^2.
TailBoundParams tail_bound_params(const AlphaSequence& alpha, double w_min,
                                  TailRounding rounding = {});

/// exp(-A (w - B)^2) for w >= w_min (1 below, where no bound is claimed).
double tail_probability_bound(const TailBoundParams& p, double w);

/// Certified bound for the discretization error |E1(eps)|:
/// 8 pi^2 (2 - rho)/(1 - rho)^2 exp(-A (2 pi/eps - B)^2), with the consecutive-term ratio
/// rho = exp(-A (2 pi/eps)(6 pi/eps - 2B)).
double bound_E1(double eps, const TailBoundParams& p);

/// Geometric ratio used by bound_E1.
double e1_ratio(double eps, const TailBoundParams& p);

/// Per-character choices for the polynomial decay bounds |F(x, chi)| <= d |x|^{-e}.
struct E2Params {
  double b = 4.0;
  double c = 1.0;
  double c_plus = 0.309;
  double c_minus = -0.309;
  /// Exponents indexed by character j (slot 0 unused). Each must be a multiple of 1/2.
  std::vector<double> e_plus;
  std::vector<double> e_minus;
  std::vector<double> e;

  /// Same exponent for every nonprincipal character.
  static E2Params uniform(int modulus, double b, double c, double c_plus, double c_minus,
                          double e_plus, double e_minus, double e);
};

/// The three closed-form pieces, already multiplied out; total = plus + minus + tilde.
struct E2Bound {
  double plus = 0.0;
  double minus = 0.0;
  double tilde = 0.0;
  double B2 = 0.0;      // upper bound for B_2(a, eps, C)
  double E2 = 0.0;      // 4 * B2, the certified bound for |E2(eps, C)|
  double e_c = 0.0;
  double e_c_plus = 0.0;
  double e_c_minus = 0.0;
  E2Params params;
};

/// Decay constants d(chi) for a given e = J/2, cached per (j, J).
class FBoundCache {
 public:
  FBoundCache(const CharacterTable& table, const ZeroTable& zeros);
  double d(int j, double e) const;

 private:
  const CharacterTable* table_;
  const ZeroTable* zeros_;
  mutable std::vector<std::vector<double>> cache_;  // [j][J], <0 when not yet computed
};

E2Bound bound_E2(long long a, double eps, double C, const E2Params& p,
                 const CharacterTable& table, const FBoundCache& fb);

/// Per-residue parameter rows from JSON of the form
/// {"modulus": q, "b": 4, "c": 1, "e": 5,
///  "rows": [{"a": 2, "c_plus": 0.309, "c_minus": -0.309, "e_plus": 8.5, "e_minus": 8.5}, ...]}.
std::map<long long, E2Params> parse_e2_rows(const nlohmann::json& doc, int modulus);
std::map<long long, E2Params> load_e2_rows(const std::filesystem::path& path, int modulus);

/// Small search over c_plus in {0.309, 0.809, 1}, c_minus in {-0.309, -0.809, -1} and
/// uniform exponents in {5, 8.5, 9.5, 10}, with b = 4, c = 1, e = 5; returns the
/// smallest certified bound.
E2Bound suggest_E2(long long a, double eps, double C, const CharacterTable& table,
                   const FBoundCache& fb);

/// D(x) = b^2 x^4 / (2 (1 - b x^2)^2), the envelope for the product-tail error.
/// Throws ConfigError unless b x^2 < 1.
double D_factor(double x, double b_hat);

/// Contribution of one lattice point to the E3 bound:
/// |term| * (prod_chi (1 + D(x_chi)) - 1).
double bound_E3_term(double abs_term, const double* x, std::size_t count, double b_hat);

/// Throws ConfigError (naming the inequality) unless b_hat eps^2 C^2 < 1.
void check_E3_hypothesis(double b_hat, double eps, double C);

}  // namespace race
