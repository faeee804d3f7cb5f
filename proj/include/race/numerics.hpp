#pragma once

#include <cmath>
#include <limits>

namespace race {

/// Neumaier (improved Kahan-Babuska) running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }
  /// Magnitude of the correction carried; a proxy for the cancellation seen so far.
  double compensation() const noexcept { return std::abs(comp_); }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated product (TwoProduct via fma): as accurate as a product formed in twice
/// the working precision, then rounded.
class CompensatedProduct {
 public:
  void multiply(double x) noexcept {
    const double p = prod_ * x;
    const double e = std::fma(prod_, x, -p);
    err_ = err_ * x + e;
    prod_ = p;
  }
  double value() const noexcept { return prod_ + err_; }

 private:
  double prod_ = 1.0;
  double err_ = 0.0;
};

/// Directed-rounding substitute: every certified bound is pushed up by (1 + 2^-40) per
/// arithmetic stage (down for quantities that must be underestimated).
inline constexpr double kRoundingSlack = 0x1p-40;

inline double round_up(double x) noexcept {
  return x >= 0 ? x * (1.0 + kRoundingSlack) : x * (1.0 - kRoundingSlack);
}
inline double round_down(double x) noexcept {
  return x >= 0 ? x * (1.0 - kRoundingSlack) : x * (1.0 + kRoundingSlack);
}

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

}  // namespace race
