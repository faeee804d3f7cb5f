#include "race/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "race/error.hpp"
#include "race/numerics.hpp"

namespace race {

namespace {

template <std::size_t N>
double poly(const double (&c)[N], double y) {
  double r = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) r = std::fma(r, y, c[i]);
  return r;
}

// Hart-style rational approximations: factor out the first two zeros of J0 on [0, 8]
// (each zero split into a 256ths part plus a tiny remainder for cancellation-free
// evaluation), Hankel asymptotic form with rational P, Q beyond.
constexpr double P1[] = {-4.1298668500990866786e+11, 2.7282507878605942706e+10,
                         -6.2140700423540120665e+08, 6.6302997904833794242e+06,
                         -3.6629814655107086448e+04, 1.0344222815443188943e+02,
                         -1.2117036164593528341e-01};
constexpr double Q1[] = {2.3883787996332290397e+12, 2.6328198300859648632e+10,
                         1.3985097372263433271e+08, 4.5612696224219938200e+05,
                         9.3614022392337710626e+02, 1.0};
constexpr double P2[] = {-1.8319397969392084011e+03, -1.2254078161378989535e+04,
                         -7.2879702464464618998e+03, 1.0341910641583726701e+04,
                         1.1725046279757103576e+04,  4.4176707025325087628e+03,
                         7.4321196680624245801e+02,  4.8591703355916499363e+01};
constexpr double Q2[] = {-3.5783478026152301072e+05, 2.4599102262586308984e+05,
                         -8.4055062591169562211e+04, 1.8680990008359188352e+04,
                         -2.9458766545509337327e+03, 3.3307310774649071172e+02,
                         -2.5258076240801555057e+01, 1.0};
constexpr double PC[] = {2.2779090197304684302e+04, 4.1345386639580765797e+04,
                         2.1170523380864944322e+04, 3.4806486443249270347e+03,
                         1.5376201909008354296e+02, 8.8961548424210455236e-01};
constexpr double QC[] = {2.2779090197304684318e+04, 4.1370412495510416640e+04,
                         2.1215350561880115730e+04, 3.5028735138235608207e+03,
                         1.5711159858080893649e+02, 1.0};
constexpr double PS[] = {-8.9226600200800094098e+01, -1.8591953644342993800e+02,
                         -1.1183429920482737611e+02, -2.2300261666214198472e+01,
                         -1.2441026745835638459e+00, -8.8033303048680751817e-03};
constexpr double QS[] = {5.7105024128512061905e+03, 1.1951131543434613647e+04,
                         7.2642780169211018836e+03, 1.4887231232283756582e+03,
                         9.0593769594993125859e+01, 1.0};

constexpr double kJ0Zero1 = 2.4048255576957727686e+00;
constexpr double kJ0Zero2 = 5.5200781102863106496e+00;
constexpr double kZero1Hi = 616.0 / 256.0;
constexpr double kZero1Lo = -1.42444230422723137837e-03;
constexpr double kZero2Hi = 1413.0 / 256.0;
constexpr double kZero2Lo = 5.46860286310649596604e-04;

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x == 0.0) return 1.0;
  if (x <= 1.0) {
    // Power series with the constant added last: near-correct rounding and no sign bias,
    // which matters when thousands of factors close to 1 are multiplied together.
    const double u = -0.25 * x * x;
    double terms[12];
    double t = 1.0;
    for (int k = 1; k <= 12; ++k) {
      t *= u / (static_cast<double>(k) * k);
      terms[k - 1] = t;
    }
    double s = 0.0;
    for (int k = 11; k >= 0; --k) s += terms[k];
    return 1.0 + s;
  }
  if (x <= 4.0) {
    const double y = x * x;
    return (x + kJ0Zero1) * ((x - kZero1Hi) - kZero1Lo) * (poly(P1, y) / poly(Q1, y));
  }
  if (x <= 8.0) {
    const double y = 1.0 - x * x / 64.0;
    return (x + kJ0Zero2) * ((x - kZero2Hi) - kZero2Lo) * (poly(P2, y) / poly(Q2, y));
  }
  const double y = 8.0 / x;
  const double y2 = y * y;
  const double rc = poly(PC, y2) / poly(QC, y2);
  const double rs = poly(PS, y2) / poly(QS, y2);
  const double s = std::sin(x);
  const double c = std::cos(x);
  // cos(x - pi/4) and sin(x - pi/4) through the addition formulas.
  return std::numbers::inv_sqrtpi / std::sqrt(x) * (rc * (c + s) - y * rs * (s - c));
}

double b1_T(const CharacterTable& table, int j, double T, const ZeroTable& zeros,
            const AnalyticConstants& constants, bool paired) {
  const CharacterLabel chi = table.label(j);
  if (!paired && !chi.is_real)
    throw ConfigError("one-sided b1(T, chi) requested for nonreal chi_" + std::to_string(j));
  CompensatedSum s;
  s += paired ? -constants.neg_b1_tilde(j) : -constants.neg_b1_real(table, j);
  auto add = [&](int k) {
    for (double g : zeros.ordinates_below(k, T)) s += 1.0 / (0.25 + g * g);
  };
  add(j);
  if (paired) add(chi.is_real ? j : chi.conjugate_index);
  const double v = s.value();
  if (v > 0)
    throw DataError("zero data for chi_" + std::to_string(j) +
                    " exceeds the analytic constant: b1(T) = " + std::to_string(v) + " > 0");
  return v;
}

TruncatedFactor make_factor(const CharacterTable& table, const CharacterLabel& chi, double T,
                            const ZeroTable& zeros, const AnalyticConstants& constants) {
  TruncatedFactor f;
  f.chi = chi;
  f.T = T;
  f.paired = !chi.is_real;
  std::vector<double> g = zeros.ordinates_below(chi.index, T);
  if (f.paired) {
    const auto other = zeros.ordinates_below(chi.conjugate_index, T);
    g.insert(g.end(), other.begin(), other.end());
    std::sort(g.begin(), g.end());
  }
  f.alpha.reserve(g.size());
  for (double x : g) f.alpha.push_back(2.0 / std::sqrt(0.25 + x * x));
  f.b1 = b1_T(table, chi.index, T, zeros, constants, f.paired);
  return f;
}

std::vector<TruncatedFactor> truncated_factors(const CharacterTable& table, double T,
                                               const ZeroTable& zeros,
                                               const AnalyticConstants& constants, bool plain) {
  const auto part = table.partition();
  std::vector<TruncatedFactor> out;
  for (const auto& chi : part.real) out.push_back(make_factor(table, chi, T, zeros, constants));
  for (const auto& chi : part.paired) out.push_back(make_factor(table, chi, T, zeros, constants));
  if (plain)
    for (auto& f : out) f.b1 = 0.0;
  return out;
}

double b_hat(const std::vector<TruncatedFactor>& factors) {
  double m = 0.0;
  for (const auto& f : factors) m = std::max(m, std::abs(f.b1));
  return m;
}

double F_T(double z, const TruncatedFactor& f) {
  CompensatedProduct p;
  for (double a : f.alpha) p.multiply(bessel_j0(a * z));
  p.multiply(1.0 + f.b1 * z * z);
  return p.value();
}

std::vector<double> factor_arguments(double t1, double t2, long long a,
                                     const CharacterTable& table,
                                     const std::vector<TruncatedFactor>& factors) {
  std::vector<double> out;
  out.reserve(factors.size());
  for (const auto& f : factors) {
    const auto w = table.value(f.chi, a);
    out.push_back(std::hypot(t1 + w.real() * t2, w.imag() * t2));
  }
  return out;
}

double phi_X_truncated(double t1, double t2, long long a, const CharacterTable& table,
                       const std::vector<TruncatedFactor>& factors) {
  const auto z = factor_arguments(t1, t2, a, table, factors);
  double p = 1.0;
  for (std::size_t i = 0; i < factors.size(); ++i) p *= F_T(z[i], factors[i]);
  return p;
}

FBound f_bound_constants(const std::vector<double>& ordinates, int J) {
  if (J < 0) throw ConfigError("f_bound_constants: J must be nonnegative");
  if (static_cast<std::size_t>(J) > ordinates.size())
    throw DataError("f_bound_constants: need " + std::to_string(J) + " ordinates, have " +
                    std::to_string(ordinates.size()));
  if (J == 0) return {1.0, 0.0, 1.0};
  double log_d = -0.5 * J * std::log(std::numbers::pi);
  for (int i = 0; i < J; ++i) {
    const double g = ordinates[static_cast<std::size_t>(i)];
    log_d += 0.25 * std::log(0.25 + g * g);
  }
  // Ordinates carry ~1e-10 absolute error; the slack dwarfs both that and rounding.
  const double d = std::exp(log_d) * (1.0 + 1e-9);
  return {std::ceil(d), 0.5 * J, d};
}

}  // namespace race
