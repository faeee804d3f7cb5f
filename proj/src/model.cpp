#include "race/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "race/error.hpp"
#include "race/numerics.hpp"

namespace race {

ModelParams variance_decomposition(const CharacterTable& table, const ZeroTable& zeros,
                                   const AnalyticConstants& constants) {
  ModelParams p;
  p.modulus = table.modulus();
  p.gamma1 = std::numeric_limits<double>::infinity();
  for (int j = 1; j < table.order(); ++j) {
    const auto& g = zeros.ordinates(j);
    if (!g.empty() && g.front() < p.gamma1) {
      p.gamma1 = g.front();
      p.low_character = j;
    }
  }
  if (p.low_character == 0) throw DataError("model: zero table holds no ordinates");
  const double w = 0.25 + p.gamma1 * p.gamma1;
  p.top_coefficient = 2.0 / std::sqrt(w);
  p.top_variance = 2.0 / w;
  p.total_variance = 2.0 * constants.representative_sum(table);
  p.residual_variance = p.total_variance - p.top_variance;
  if (!(p.residual_variance > 0)) throw DataError("model: residual variance is not positive");
  // chi*(g^k) = e^{2 pi i j k/(q-1)}; solve j k = 1 (mod q-1).
  const int n = table.order();
  for (int k = 0; k < n; ++k) {
    if ((static_cast<long long>(p.low_character) * k) % n == 1) {
      p.generator = table.power(k);
      break;
    }
  }
  if (p.generator == 0)
    throw DataError("model: chi_" + std::to_string(p.low_character) +
                    " does not generate the character group");
  return p;
}

double normal_cdf(double x, double variance) {
  if (!(variance > 0)) throw ConfigError("normal_cdf: variance must be positive");
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

double model_quadrant_probability(int k, const ModelParams& p) {
  if (k < 1 || k > p.modulus - 2)
    throw ConfigError("model: rotation index must lie in [1, q-2]");
  const double shift = 2.0 * std::numbers::pi * k / (p.modulus - 1);
  const double c = p.top_coefficient;
  auto integrand = [&](double t) {
    return normal_cdf(c * std::cos(t), p.residual_variance) *
           normal_cdf(c * std::cos(t - shift), p.residual_variance);
  };
  // Trapezoid on a periodic integrand: mean of equally spaced samples. Each doubling
  // reuses the previous nodes.
  std::size_t nodes = 16;
  CompensatedSum sum;
  for (std::size_t i = 0; i < nodes; ++i) sum += integrand(2.0 * std::numbers::pi * i / nodes);
  double prev = sum.value() / nodes;
  for (int round = 0; round < 16; ++round) {
    for (std::size_t i = 0; i < nodes; ++i)
      sum += integrand(2.0 * std::numbers::pi * (2 * i + 1) / (2 * nodes));
    nodes *= 2;
    const double cur = sum.value() / nodes;
    if (std::abs(cur - prev) < 1e-12 && round >= 1) return cur;
    prev = cur;
  }
  throw AccuracyError("model: quadrature did not converge");
}

int model_rotation_index(long long a, const CharacterTable& table, const ModelParams& p) {
  return table.exponent(p.low_character, a);
}

double relative_l2_error(const std::vector<double>& model, const std::vector<double>& delta) {
  if (model.size() != delta.size() || model.empty())
    throw ConfigError("relative_l2_error: vectors must be nonempty and of equal length");
  double num = 0, den = 0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    num += (model[i] - delta[i]) * (model[i] - delta[i]);
    den += delta[i] * delta[i];
  }
  return std::sqrt(num / den);
}

}  // namespace race
