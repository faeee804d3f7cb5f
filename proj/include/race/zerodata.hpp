#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "race/characters.hpp"

namespace race {

/// Positive ordinates of zeros of L(s, chi_j) for every nonprincipal j, complete below
/// t_max(j). Zeros of chi_j below the real axis are the negated positive zeros of the
/// conjugate character, so positive lists for all q-2 characters describe everything.
class ZeroTable {
 public:
  ZeroTable() = default;
  ZeroTable(int modulus, std::vector<std::vector<double>> positive, std::vector<double> t_max,
            std::string source);

  int modulus() const noexcept { return modulus_; }
  const std::string& source() const noexcept { return source_; }
  /// Stated absolute accuracy of every ordinate.
  double accuracy() const noexcept { return accuracy_; }
  void set_accuracy(double a) { accuracy_ = a; }

  /// Sorted positive ordinates of chi_j (j in [1, q-2]).
  const std::vector<double>& ordinates(int j) const;
  /// Ordinates of chi_j strictly below T; throws DataError if T exceeds completeness.
  std::vector<double> ordinates_below(int j, double T) const;
  double t_max(int j) const;
  /// Smallest completeness height over all characters.
  double min_t_max() const;
  std::size_t total_zeros() const;

  /// Restriction to zeros below T (t_max becomes T).
  ZeroTable truncated(double T) const;

 private:
  int modulus_ = 0;
  std::vector<std::vector<double>> positive_;  // index j, slot 0 unused
  std::vector<double> t_max_;
  std::string source_;
  double accuracy_ = 1e-9;
};

/// Per-character sums over zeros: neg_b1_tilde(j) = -b~1(0, chi_j) = sum_{gamma in R} 1/(1/4+gamma^2).
class AnalyticConstants {
 public:
  AnalyticConstants() = default;
  AnalyticConstants(int modulus, std::vector<double> neg_b1_tilde, double accuracy);

  int modulus() const noexcept { return modulus_; }
  double accuracy() const noexcept { return accuracy_; }
  /// -b~1(0, chi): sum over all zeros (both signs) of chi.
  double neg_b1_tilde(int j) const;
  /// -b1(0, chi): sum over positive zeros; only defined for real chi (half the paired sum).
  double neg_b1_real(const CharacterTable& table, int j) const;
  /// Sum of the constants over R(q) (one-sided) and H(q) (paired): equals sum over
  /// every positive zero of every nonprincipal character.
  double representative_sum(const CharacterTable& table) const;

 private:
  int modulus_ = 0;
  std::vector<double> values_;  // index j
  double accuracy_ = 0.0;
};

/// -b~1(0, chi) = log(q/pi) - C0 - (1 + chi(-1)) log 2 + 2 Re L'/L(1, chi) (Vorhauer).
double b1_zero_from_logderiv(const CharacterTable& table, int j, double re_logderiv);

/// Merged non-increasing sequence r_k = 2/sqrt(1/4+gamma^2) over the positive zeros of
/// every nonprincipal character, with a certified bound for the untabulated tail.
struct AlphaSequence {
  std::vector<double> r;
  std::vector<double> partial_sums;  // partial_sums[k] = r_1 + ... + r_k, partial_sums[0] = 0
  /// Upper bound on sum_{all k} r_k^2, from the analytic constants.
  double total_squares_upper = 0.0;
  /// r values of untabulated zeros are all <= this.
  double untabulated_cap = 0.0;

  /// Certified upper bound on sum_{k > K} r_k^2. Throws if r_K is not guaranteed to be
  /// the K-th largest value (K past the complete part of the table).
  double tail_squares_upper(std::size_t K) const;
};

AlphaSequence alpha_sequence(const ZeroTable& zeros, const AnalyticConstants& constants,
                             const CharacterTable& table);

ZeroTable parse_zero_table(const nlohmann::json& doc, const CharacterTable& table);
ZeroTable load_zero_table(const std::filesystem::path& path, const CharacterTable& table);
/// Canonical form: paper labels, per_character storage, %.17g ordinates.
nlohmann::json to_json(const ZeroTable& zeros);

AnalyticConstants parse_constants(const nlohmann::json& doc, const CharacterTable& table);
AnalyticConstants load_constants(const std::filesystem::path& path, const CharacterTable& table);

/// Everything a computation mod q needs.
struct Dataset {
  CharacterTable table;
  ZeroTable zeros;
  AnalyticConstants constants;
  std::filesystem::path zeros_path;
  std::filesystem::path constants_path;
};

/// Data directory: $RACE_DENSITY_DATA if set, else the compiled-in default.
std::filesystem::path default_data_dir();

/// Loads constants_q<q>.json and the zero file zeros_q<q>_t<H>.json with the smallest
/// H >= T from dir.
Dataset load_dataset(const std::filesystem::path& dir, int q, double T);

/// Expected number of zeros of one L(s, chi) with 0 < gamma < T:
/// (T / 2 pi) log(q T / (2 pi e)).
double expected_zero_count(int modulus, double T);

struct ZeroCountCheck {
  int index;
  double height;
  std::size_t counted;
  double expected;
  bool ok;
};

/// Zero-count sanity (data alarm only): counts at heights >= 50 within +-10% of
/// expected_zero_count.
std::vector<ZeroCountCheck> zero_count_sanity(const ZeroTable& zeros);

}  // namespace race
