#include "race/density.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "race/error.hpp"
#include "race/numerics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace race {

namespace {

constexpr double kPi = std::numbers::pi;
// Validated absolute accuracy of bessel_j0 (tested against two independent references).
constexpr double kJ0AbsError = 5e-14;
// max |J1(x)|, attained near x = 1.8412.
constexpr double kJ1Max = 0.5819;
// sup over 0 < x <= 1 of J1(x) / (x J0(x)).
constexpr double kJ1OverXJ0 = 0.5752;
// First positive zero of J0, squared.
constexpr double kJ0Zero1Sq = 2.404825557695773 * 2.404825557695773;

double gamma_from_alpha(double a) { return std::sqrt(std::max(4.0 / (a * a) - 0.25, 0.0)); }

std::vector<long long> odd_values(double C, bool positive_only) {
  std::vector<long long> out;
  const auto M = static_cast<long long>(std::floor(C));
  for (long long m = positive_only ? 1 : -M; m <= M; ++m)
    if (m % 2 != 0) out.push_back(m);
  return out;
}

struct RowResult {
  double sum = 0.0;
  double comp = 0.0;  // residual carried by compensated accumulation
  double abs_sum = 0.0;
  double e3 = 0.0;
  double float_err = 0.0;
  double sens = 0.0;
  std::size_t count = 0;
};

class Accumulator {
 public:
  explicit Accumulator(Summation mode) : mode_(mode) {}
  void add(double x) {
    if (mode_ == Summation::compensated)
      cs_ += x;
    else
      plain_ += x;
  }
  double value() const { return mode_ == Summation::compensated ? cs_.value() : plain_; }
  double compensation() const { return mode_ == Summation::compensated ? cs_.compensation() : 0; }

 private:
  Summation mode_;
  CompensatedSum cs_;
  double plain_ = 0.0;
};

// Everything a lattice point needs about factor i at residue a.
struct FactorGeometry {
  double re, im;
};

std::vector<FactorGeometry> geometry(const CharacterTable& table,
                                     const std::vector<TruncatedFactor>& factors, long long a) {
  std::vector<FactorGeometry> g;
  for (const auto& f : factors) {
    const auto w = table.value(f.chi, a);
    g.push_back({w.real(), w.imag()});
  }
  return g;
}

double summation_error(Summation mode, std::size_t n, double abs_sum, double value) {
  const double u = kUnitRoundoff;
  const double dn = static_cast<double>(n);
  if (mode == Summation::compensated) return 2 * u * std::abs(value) + 2 * dn * dn * u * u * abs_sum;
  return dn * u * abs_sum / (1 - dn * u);
}

}  // namespace

std::vector<double> log_j0_coefficients(int n) {
  // J0(x) = sum a_k y^k with y = x^2, a_k = (-1/4)^k/(k!)^2; log J0 = sum l_k y^k satisfies
  // k l_k = k a_k - sum_{i<k} i l_i a_{k-i}.
  std::vector<double> a(static_cast<std::size_t>(n) + 1), l(static_cast<std::size_t>(n) + 1, 0.0);
  a[0] = 1.0;
  for (int k = 1; k <= n; ++k) a[k] = a[k - 1] * (-0.25) / (static_cast<double>(k) * k);
  for (int k = 1; k <= n; ++k) {
    double s = k * a[k];
    for (int i = 1; i < k; ++i) s -= i * l[i] * a[k - i];
    l[k] = s / k;
  }
  return {l.begin() + 1, l.end()};
}

LatticeKernel::LatticeKernel(std::vector<TruncatedFactor> factors, double z_max)
    : factors_(std::move(factors)), z_max_(z_max), terms_(0) {
  const int max_terms = 60;
  const auto l = log_j0_coefficients(max_terms);
  // Pick the series length from the largest tail weight: the neglected part of
  // sum_gamma log J0(alpha z) is below 1.3 (alpha z)^2 (1/j0^2)^{K+1} per zero.
  double worst = 0.0;
  std::vector<std::size_t> split;
  for (const auto& f : factors_) {
    std::size_t h = 0;
    while (h < f.alpha.size() && f.alpha[h] * z_max_ > 1.0) ++h;
    split.push_back(h);
    double s2 = 0.0;
    for (std::size_t k = h; k < f.alpha.size(); ++k) s2 += f.alpha[k] * f.alpha[k];
    worst = std::max(worst, s2 * z_max_ * z_max_);
  }
  int K = 1;
  while (K < max_terms && 1.3 * worst * std::pow(1.0 / kJ0Zero1Sq, K + 1) > 1e-18) ++K;
  terms_ = K;

  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    Head hd;
    hd.alpha.assign(f.alpha.begin(), f.alpha.begin() + static_cast<std::ptrdiff_t>(split[i]));
    for (double a : hd.alpha) hd.dalpha.push_back(a * a * a * gamma_from_alpha(a) / 4);
    Tail tl;
    tl.coeff.assign(static_cast<std::size_t>(K), 0.0);
    std::vector<CompensatedSum> power(static_cast<std::size_t>(K));
    CompensatedSum sens;
    for (std::size_t k = split[i]; k < f.alpha.size(); ++k) {
      const double a2 = f.alpha[k] * f.alpha[k];
      double p = 1.0;
      for (int r = 0; r < K; ++r) {
        p *= a2;
        power[static_cast<std::size_t>(r)] += p;
      }
      sens += a2 * a2 * gamma_from_alpha(f.alpha[k]);
    }
    for (int r = 0; r < K; ++r)
      tl.coeff[static_cast<std::size_t>(r)] = l[static_cast<std::size_t>(r)] *
                                              power[static_cast<std::size_t>(r)].value();
    tl.sens = sens.value();
    heads_.push_back(std::move(hd));
    tails_.push_back(std::move(tl));
  }
}

std::size_t LatticeKernel::head_count() const {
  std::size_t n = 0;
  for (const auto& h : heads_) n += h.alpha.size();
  return n;
}

std::size_t LatticeKernel::tail_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    n += factors_[i].alpha.size() - heads_[i].alpha.size();
  return n;
}

double LatticeKernel::eval(std::size_t i, double z) const {
  const auto& hd = heads_[i];
  const auto& tl = tails_[i];
  const double u = z * z;
  double poly = 0.0;
  for (std::size_t r = tl.coeff.size(); r-- > 0;) poly = (poly + tl.coeff[r]) * u;
  CompensatedProduct p;
  for (double a : hd.alpha) p.multiply(bessel_j0(a * z));
  p.multiply(std::exp(poly) * (1.0 + factors_[i].b1 * u));
  return p.value();
}

void validate_config(const RunConfig& cfg, const Dataset& data) {
  if (cfg.q != data.table.modulus())
    throw ConfigError("modulus " + std::to_string(cfg.q) + " does not match the loaded data");
  const long long a = ((cfg.a % cfg.q) + cfg.q) % cfg.q;
  if (a == 0) throw ConfigError("residue a must be coprime to q");
  if (a == 1) throw ConfigError("a = 1 (mod q) is the degenerate race X1 = X2");
  if (!(cfg.eps > 0 && cfg.eps < 1)) throw ConfigError("eps must lie in (0, 1)");
  if (!(cfg.C >= 4)) throw ConfigError("C must be at least 4 (floor(C/2) - 1 > 0)");
  if (!(cfg.T > 0)) throw ConfigError("T must be positive");
  if (cfg.T > data.zeros.min_t_max())
    throw DataError("zero data complete only to " + std::to_string(data.zeros.min_t_max()) +
                    ", requested T = " + std::to_string(cfg.T));
  if (cfg.workers < 0) throw ConfigError("workers must be nonnegative");
}

SResult compute_S_and_E3(const RunConfig& cfg, const CharacterTable& table,
                         const std::vector<TruncatedFactor>& factors, double zero_accuracy) {
  SResult out;
  out.b_hat = b_hat(factors);
  if (!cfg.plain_truncation) check_E3_hypothesis(out.b_hat, cfg.eps, cfg.C);
  const long long a = ((cfg.a % cfg.q) + cfg.q) % cfg.q;
  const auto geo = geometry(table, factors, a);
  const std::size_t nf = factors.size();
  const bool sym = cfg.use_symmetry;
  const auto rows = odd_values(cfg.C, sym);
  const auto cols = odd_values(cfg.C, false);
  const double half_eps = cfg.eps / 2;
  const double weight = sym ? 2.0 : 1.0;
  const double u = kUnitRoundoff;
  std::vector<RowResult> row_results(rows.size());

  if (cfg.kernel == Kernel::reference) {
    std::size_t nzeros = 0;
    for (const auto& f : factors) nzeros += f.alpha.size();
    std::vector<double> z(nf);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double m = static_cast<double>(rows[r]);
      Accumulator acc(cfg.summation);
      RowResult& rr = row_results[r];
      for (long long ni : cols) {
        const double n = static_cast<double>(ni);
        double prod = 1.0;
        for (std::size_t i = 0; i < nf; ++i) {
          const double x = m + geo[i].re * n;
          const double y = geo[i].im * n;
          z[i] = half_eps * std::sqrt(x * x + y * y);
          prod *= F_T(z[i], factors[i]);
        }
        const double inv = weight / (m * n);
        const double t = inv * prod;
        acc.add(t);
        rr.abs_sum += std::abs(t);
        rr.float_err += std::abs(inv) * static_cast<double>(nzeros) * kJ0AbsError +
                        std::abs(t) * (4.0 * nf + 8) * u;
        if (!cfg.plain_truncation) rr.e3 += bound_E3_term(std::abs(t), z.data(), nf, out.b_hat);
        ++rr.count;
      }
      rr.sum = acc.value();
      rr.comp = acc.compensation();
    }
    out.head_zeros = nzeros;
  } else {
    const LatticeKernel kernel(factors, cfg.eps * cfg.C);
    out.head_zeros = kernel.head_count();
    out.tail_zeros = kernel.tail_count();
    out.series_terms = kernel.series_terms();
    std::vector<double> db1(nf, 0.0);
    for (std::size_t i = 0; i < nf && !cfg.plain_truncation; ++i)
      for (double al : factors[i].alpha)
        db1[i] += al * al * al * al * gamma_from_alpha(al) / 8;
    const double j0_budget = static_cast<double>(kernel.head_count()) * kJ0AbsError;
    const double ops = 4.0 * (kernel.series_terms() + 8) + 8.0 * nf;

#ifdef _OPENMP
    const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
#endif
    {
      std::vector<double> z(nf), F(nf), head_abs(nf), head_sens(nf), rest(nf);
      std::vector<double> jv;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 1)
#endif
      for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows.size()); ++r) {
        const double m = static_cast<double>(rows[static_cast<std::size_t>(r)]);
        Accumulator acc(cfg.summation);
        RowResult& rr = row_results[static_cast<std::size_t>(r)];
        for (long long ni : cols) {
          const double n = static_cast<double>(ni);
          double prod = 1.0;
          for (std::size_t i = 0; i < nf; ++i) {
            const double x = m + geo[i].re * n;
            const double y = geo[i].im * n;
            const double zi = half_eps * std::sqrt(x * x + y * y);
            z[i] = zi;
            const auto& hd = kernel.head(i);
            const auto& tl = kernel.tail(i);
            const double uu = zi * zi;
            double poly = 0.0;
            for (std::size_t k = tl.coeff.size(); k-- > 0;) poly = (poly + tl.coeff[k]) * uu;
            const double rest_factor = std::exp(poly) * (1.0 + factors[i].b1 * uu);
            // Head product, with the leave-one-out products needed for the sensitivity.
            const std::size_t nh = hd.alpha.size();
            jv.resize(nh);
            CompensatedProduct p;
            for (std::size_t h = 0; h < nh; ++h) {
              jv[h] = bessel_j0(hd.alpha[h] * zi);
              p.multiply(jv[h]);
            }
            p.multiply(rest_factor);
            F[i] = p.value();
            prod *= F[i];
            double s = 0.0;
            double prefix = 1.0;
            for (std::size_t h = 0; h < nh; ++h) {
              double suffix = 1.0;
              for (std::size_t k = h + 1; k < nh; ++k) suffix *= std::abs(jv[k]);
              s += hd.dalpha[h] * prefix * suffix;
              prefix *= std::abs(jv[h]);
            }
            head_sens[i] = kJ1Max * zi * s * std::abs(rest_factor) +
                           std::abs(F[i]) * (kJ1OverXJ0 / 4 * uu * tl.sens) +
                           std::abs(F[i] / (1.0 + factors[i].b1 * uu)) * uu * db1[i];
          }
          const double inv = weight / (m * n);
          const double t = inv * prod;
          acc.add(t);
          const double at = std::abs(t);
          rr.abs_sum += at;
          rr.float_err += std::abs(inv) * j0_budget + at * ops * u;
          // Leave-one-out product over factors for the data sensitivity.
          double sens = 0.0;
          for (std::size_t i = 0; i < nf; ++i) {
            double others = 1.0;
            for (std::size_t k = 0; k < nf; ++k)
              if (k != i) others *= std::abs(F[k]);
            sens += head_sens[i] * others;
          }
          rr.sens += std::abs(inv) * sens;
          if (!cfg.plain_truncation) rr.e3 += bound_E3_term(at, z.data(), nf, out.b_hat);
          ++rr.count;
        }
        rr.sum = acc.value();
        rr.comp = acc.compensation();
      }
    }
  }

  // Fixed-order reduction: identical for any thread count.
  Accumulator total(cfg.summation);
  CompensatedSum e3, ferr, sens, abs_sum;
  for (const auto& rr : row_results) {
    total.add(rr.sum);
    e3 += rr.e3;
    ferr += rr.float_err;
    sens += rr.sens;
    abs_sum += rr.abs_sum;
    out.lattice_points += rr.count;
  }
  out.S = total.value();
  out.E3 = cfg.plain_truncation ? 0.0 : round_up(e3.value() * (1 + 1e-12));
  out.float_error = round_up(ferr.value() + summation_error(cfg.summation, out.lattice_points,
                                                            abs_sum.value(), out.S));
  out.data_sensitivity = round_up(sens.value() * zero_accuracy);
  return out;
}

SResult compute_S_and_E3(const RunConfig& cfg, const Dataset& data) {
  validate_config(cfg, data);
  const auto factors =
      truncated_factors(data.table, cfg.T, data.zeros, data.constants, cfg.plain_truncation);
  return compute_S_and_E3(cfg, data.table, factors, data.zeros.accuracy());
}

namespace {

DensityResult assemble(const RunConfig& cfg, const Dataset& data,
                       const std::vector<TruncatedFactor>& factors, const TailBoundParams& tail,
                       const FBoundCache& fb) {
  const auto start = std::chrono::steady_clock::now();
  DensityResult r;
  r.config = cfg;
  r.a = ((cfg.a % cfg.q) + cfg.q) % cfg.q;
  r.tail = tail;
  r.e1 = bound_E1(cfg.eps, tail);
  r.e2_detail = cfg.e2 ? bound_E2(r.a, cfg.eps, cfg.C, *cfg.e2, data.table, fb)
                       : suggest_E2(r.a, cfg.eps, cfg.C, data.table, fb);
  r.e2 = r.e2_detail.E2;
  const auto s = compute_S_and_E3(cfg, data.table, factors, data.zeros.accuracy());
  r.S = s.S;
  r.e3 = s.E3;
  r.float_error = s.float_error;
  r.data_sensitivity = s.data_sensitivity;
  r.b_hat = s.b_hat;
  r.delta_pp = 0.25 - r.S / (kPi * kPi);
  const double budget = r.e1 / 4 + r.e2 + r.e3 + r.float_error + r.data_sensitivity;
  // The final subtraction and division add a few ulps of |delta|.
  r.error_radius = round_up(round_up(budget / (kPi * kPi)) + 4 * kUnitRoundoff);
  r.zeros_source = data.zeros.source();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

TailBoundParams tail_for(const RunConfig& cfg, const Dataset& data) {
  const auto alpha = alpha_sequence(data.zeros, data.constants, data.table);
  auto tail = tail_bound_params(alpha, 2 * kPi, cfg.tail_rounding);
  if (cfg.plain_truncation && 2.0 / std::sqrt(0.25 + cfg.T * cfg.T) >= alpha.r[tail.k0])
    throw ConfigError("truncation height too low for the tail bound of the truncated variable");
  return tail;
}

}  // namespace

std::vector<DensityResult> compute_deltas(const RunConfig& cfg, const Dataset& data,
                                          const std::vector<long long>& residues) {
  validate_config(cfg, data);
  for (long long a : residues) {
    RunConfig c = cfg;
    c.a = a;
    validate_config(c, data);
  }
  const auto factors =
      truncated_factors(data.table, cfg.T, data.zeros, data.constants, cfg.plain_truncation);
  const auto tail = tail_for(cfg, data);
  const FBoundCache fb(data.table, data.zeros);
  std::vector<DensityResult> out;
  for (long long a : residues) {
    RunConfig c = cfg;
    c.a = a;
    out.push_back(assemble(c, data, factors, tail, fb));
  }
  return out;
}

DensityResult compute_delta(const RunConfig& cfg, const Dataset& data) {
  return compute_deltas(cfg, data, {cfg.a}).front();
}

SignedDensities delta_variants(const DensityResult& r) {
  const double comp = 0.5 - r.delta_pp;
  return {r.delta_pp, r.delta_pp, comp, comp, r.error_radius};
}

}  // namespace race
