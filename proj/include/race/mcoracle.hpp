#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "race/characters.hpp"
#include "race/zerodata.hpp"

namespace race {

enum class Sampler { fast, reference };

struct SampleSpec {
  /// Residues evaluated on the same samples of the zero phases.
  std::vector<long long> residues{2};
  double T = 1000;
  std::uint64_t N = 1'000'000;
  std::uint64_t seed = 42;
  /// Pair sample 2i+1 with the negated phases of sample 2i.
  bool antithetic = false;
  /// Thresholds w for the tail counts P(X_i >= w).
  std::vector<double> thresholds{2 * 3.141592653589793, 8.0};
  int workers = 0;
  Sampler sampler = Sampler::fast;
};

struct Exceedance {
  double w = 0.0;
  std::uint64_t count_x1 = 0;
  std::uint64_t count_x2 = 0;
};

/// Quadrant tallies in the order (++, +-, -+, --) for (X1, X2).
struct QuadrantEstimate {
  long long a = 0;
  std::uint64_t N = 0;
  std::array<std::uint64_t, 4> counts{};
  std::vector<Exceedance> exceedances;

  double frequency(int quadrant) const;
  /// Binomial standard error sqrt(p (1 - p)/N) of frequency(quadrant).
  double standard_error(int quadrant) const;
};

struct MonteCarloResult {
  std::vector<QuadrantEstimate> estimates;  // one per residue
  /// Sample mean and variance of X1.
  double mean_x1 = 0.0;
  double variance_x1 = 0.0;
  /// 2 * sum over sampled zeros of 1/(1/4 + gamma^2), the exact variance of X1.
  double expected_variance = 0.0;
  std::size_t zeros_used = 0;
};

/// Draws N samples of X(q; a) = sum over nonprincipal chi and 0 < gamma < T of
/// alpha_gamma (cos theta, Re(chi(a) e^{i theta})), with independent uniform phases from a
/// counter-based generator keyed by (seed, sample, zero). Reproducible for any thread count.
MonteCarloResult sample_X(const SampleSpec& spec, const CharacterTable& table,
                          const ZeroTable& zeros);

/// Sample variance of X1 (convenience wrapper over sample_X).
double estimate_variance(const SampleSpec& spec, const CharacterTable& table,
                         const ZeroTable& zeros);

/// Stateless 64-bit mixer (SplitMix64 finalizer).
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace race
