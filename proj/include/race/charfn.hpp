#pragma once

#include <vector>

#include "race/characters.hpp"
#include "race/zerodata.hpp"

namespace race {

/// Bessel function of the first kind, order zero. Absolute error below 5e-14 on
/// |x| <= 5000; J0(-x) == J0(x) bitwise.
double bessel_j0(double x);

/// Truncated Bessel product for one character (real chi) or one conjugate pair (chi in H):
/// F_T(z) = prod_{gamma} J0(alpha_gamma z) * (1 + b1 z^2).
struct TruncatedFactor {
  CharacterLabel chi;
  double T = 0.0;
  /// True for the paired form F~_T, whose product runs over the zeros of chi and conj(chi).
  bool paired = false;
  /// alpha_gamma = 2/sqrt(1/4 + gamma^2), non-increasing.
  std::vector<double> alpha;
  /// b1(T, chi) for real chi, b~1(T, chi) for paired; always <= 0.
  double b1 = 0.0;
};

/// b1(T, chi) = b1(0, chi) + sum_{0<gamma<T} 1/(1/4+gamma^2). With paired = true, the
/// two-sided b~1(T, chi) (zeros of chi and its conjugate). Throws DataError if the table
/// is incomplete below T or the data make the result positive.
double b1_T(const CharacterTable& table, int j, double T, const ZeroTable& zeros,
            const AnalyticConstants& constants, bool paired);

TruncatedFactor make_factor(const CharacterTable& table, const CharacterLabel& chi, double T,
                            const ZeroTable& zeros, const AnalyticConstants& constants);

/// Factors for R(q) followed by H(q). With plain = true every correction b1 is zero,
/// giving the exact characteristic function of the zero-truncated random variable.
std::vector<TruncatedFactor> truncated_factors(const CharacterTable& table, double T,
                                               const ZeroTable& zeros,
                                               const AnalyticConstants& constants,
                                               bool plain = false);

/// max |b1| over the factors (b-hat).
double b_hat(const std::vector<TruncatedFactor>& factors);

/// Direct evaluation: compensated product of J0 terms times (1 + b1 z^2).
double F_T(double z, const TruncatedFactor& f);

/// |t1 + chi(a) t2| for every factor, in factor order.
std::vector<double> factor_arguments(double t1, double t2, long long a,
                                     const CharacterTable& table,
                                     const std::vector<TruncatedFactor>& factors);

/// phi_X(t1, t2) = prod over R(q) and H(q) of F_T(|t1 + chi(a) t2|).
double phi_X_truncated(double t1, double t2, long long a, const CharacterTable& table,
                       const std::vector<TruncatedFactor>& factors);

struct FBound {
  /// Integer ceiling of the constant (the tabulated form).
  double d = 1.0;
  double e = 0.0;
  /// The constant itself, rounded up only by floating-point slack.
  double d_exact = 1.0;
};

/// |F(x, chi)| <= min{1, d |x|^{-e}} with e = J/2 and
/// d = pi^{-J/2} prod_{j<=J} (1/4 + gamma_j^2)^{1/4} from the J lowest ordinates; both the
/// ceiling and the unrounded value are certified.
FBound f_bound_constants(const std::vector<double>& ordinates, int J);

}  // namespace race
