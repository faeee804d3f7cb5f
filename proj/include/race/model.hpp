#pragma once

#include <vector>

#include "race/characters.hpp"
#include "race/zerodata.hpp"

namespace race {

/// Single-low-zero model: the lowest zero gamma_1 (of character chi*) contributes
/// c Re((1, conj chi*(a)) Z) with c = alpha_{gamma_1}; every other zero is lumped into an
/// independent normal variable carrying the remaining variance.
struct ModelParams {
  int modulus = 0;
  int low_character = 0;  // index of chi*
  double gamma1 = 0.0;
  double top_coefficient = 0.0;  // alpha_{gamma_1} = 2/sqrt(1/4 + gamma_1^2)
  double top_variance = 0.0;     // 2/(1/4 + gamma_1^2) = top_coefficient^2 / 2
  double total_variance = 0.0;   // 2 * sum of the representative constants
  double residual_variance = 0.0;
  /// Residue g* with chi*(g*) = e^{2 pi i/(q-1)}; powers of g* rotate the low zero by
  /// 2 pi/(q-1) each.
  long long generator = 0;
};

ModelParams variance_decomposition(const CharacterTable& table, const ZeroTable& zeros,
                                   const AnalyticConstants& constants);

/// P(N(0, variance) <= x).
double normal_cdf(double x, double variance);

/// (1/2 pi) int_0^{2 pi} F(c cos t) F(c cos(t - 2 pi k/(q-1))) dt with F the CDF of the
/// residual normal. Periodic trapezoid rule with node doubling to 1e-12; throws
/// AccuracyError if the doubling does not settle.
double model_quadrant_probability(int k, const ModelParams& p);

/// k such that chi*(a) = e^{2 pi i k/(q-1)}, i.e. a = (g*)^k.
int model_rotation_index(long long a, const CharacterTable& table, const ModelParams& p);

/// ||model - delta|| / ||delta|| in l2 over matching rows.
double relative_l2_error(const std::vector<double>& model, const std::vector<double>& delta);

}  // namespace race
