#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "race/charfn.hpp"
#include "race/errbounds.hpp"
#include "race/zerodata.hpp"

namespace race {

enum class Summation { compensated, plain };

/// Which evaluator runs the lattice sum. The fast kernel evaluates low zeros directly and
/// folds every zero with alpha * eps * C <= 1 into a power series of log J0; the reference
/// evaluates the full J0 product at every lattice point, serially.
enum class Kernel { fast, reference };

struct RunConfig {
  int q = 11;
  long long a = 2;
  double eps = 0.2;
  double C = 100;
  double T = 2500;
  /// E2 parameters; empty means the automatic search.
  std::optional<E2Params> e2;
  /// Worker threads for the fast kernel; 0 keeps the OpenMP default.
  int workers = 0;
  Summation summation = Summation::compensated;
  Kernel kernel = Kernel::fast;
  /// Drop the quadratic tail correction: the products become the exact characteristic
  /// function of the random vector built from zeros below T only, and E3 is zero.
  bool plain_truncation = false;
  /// Sum over m > 0 and double, using the (m, n) -> (-m, -n) symmetry.
  bool use_symmetry = true;
  TailRounding tail_rounding{};
};

/// Throws ConfigError naming the violated condition.
void validate_config(const RunConfig& cfg, const Dataset& data);

struct SResult {
  double S = 0.0;
  double E3 = 0.0;
  /// Bound for floating-point error in S (J0 error, products, summation).
  double float_error = 0.0;
  /// Bound for the change in S caused by the stated ordinate accuracy.
  double data_sensitivity = 0.0;
  double b_hat = 0.0;
  std::size_t lattice_points = 0;
  std::size_t head_zeros = 0;
  std::size_t tail_zeros = 0;
  int series_terms = 0;
};

/// Preprocessed per-factor data for the fast kernel, reusable across residues.
class LatticeKernel {
 public:
  LatticeKernel(std::vector<TruncatedFactor> factors, double z_max);

  const std::vector<TruncatedFactor>& factors() const noexcept { return factors_; }
  double z_max() const noexcept { return z_max_; }
  int series_terms() const noexcept { return terms_; }
  std::size_t head_count() const;
  std::size_t tail_count() const;

  /// F_T(z) for factor i using head product and tail series; z must not exceed z_max.
  double eval(std::size_t i, double z) const;

  struct Head {
    std::vector<double> alpha;
    /// sum alpha^3 gamma/4 weights for the data sensitivity bound
    std::vector<double> dalpha;
  };
  struct Tail {
    /// log prod J0(alpha z) = sum_k coeff[k] u^{k+1}, u = z^2
    std::vector<double> coeff;
    /// sum alpha^4 gamma over the tail zeros
    double sens = 0.0;
  };
  const Head& head(std::size_t i) const { return heads_[i]; }
  const Tail& tail(std::size_t i) const { return tails_[i]; }

 private:
  std::vector<TruncatedFactor> factors_;
  double z_max_;
  int terms_;
  std::vector<Head> heads_;
  std::vector<Tail> tails_;
};

/// Maclaurin coefficients l_k of log J0(x) = sum_{k>=1} l_k x^{2k}, k = 1..n.
std::vector<double> log_j0_coefficients(int n);

SResult compute_S_and_E3(const RunConfig& cfg, const Dataset& data);

/// Same, with prebuilt factors (saves re-reading the zero table for every residue).
SResult compute_S_and_E3(const RunConfig& cfg, const CharacterTable& table,
                         const std::vector<TruncatedFactor>& factors, double zero_accuracy);

struct DensityResult {
  long long a = 0;
  double delta_pp = 0.0;
  double error_radius = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double float_error = 0.0;
  double data_sensitivity = 0.0;
  double S = 0.0;
  double b_hat = 0.0;
  TailBoundParams tail;
  E2Bound e2_detail;
  RunConfig config;
  double seconds = 0.0;
  std::string zeros_source;
};

DensityResult compute_delta(const RunConfig& cfg, const Dataset& data);

/// Batch over residues sharing the factor setup.
std::vector<DensityResult> compute_deltas(const RunConfig& cfg, const Dataset& data,
                                          const std::vector<long long>& residues);

struct SignedDensities {
  double pp, mm, pm, mp;
  double radius;
};

/// delta^{--} = delta^{++}, delta^{+-} = delta^{-+} = 1/2 - delta^{++}.
SignedDensities delta_variants(const DensityResult& r);

}  // namespace race
