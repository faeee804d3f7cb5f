#include "race/mcoracle.hpp"

#include <algorithm>
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

// Phases are drawn from 4096 equally spaced angles. The characteristic function of that
// discrete uniform law differs from the continuous one by terms of order J_4096, far
// below double precision for every argument reached here.
constexpr int kPhaseBits = 12;
constexpr std::uint64_t kPhaseCount = 1u << kPhaseBits;
constexpr std::uint64_t kPhaseMask = kPhaseCount - 1;
constexpr int kPhasesPerWord = 64 / kPhaseBits;  // 5
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kBlock = 1u << 14;

struct PhaseTable {
  std::vector<double> cs;  // interleaved cos, sin
  PhaseTable() : cs(2 * kPhaseCount) {
    for (std::uint64_t i = 0; i < kPhaseCount; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / kPhaseCount;
      cs[2 * i] = std::cos(t);
      cs[2 * i + 1] = std::sin(t);
    }
  }
};

const PhaseTable& phase_table() {
  static const PhaseTable t;
  return t;
}

// Zero coefficients grouped by character, each group padded with zeros to a whole number
// of random words.
struct ZeroLayout {
  std::vector<double> alpha;
  std::vector<std::size_t> offset;  // per character, plus end
  std::vector<int> chars;
  std::size_t real_count = 0;
  double variance = 0.0;
};

ZeroLayout layout(const CharacterTable& table, const ZeroTable& zeros, double T) {
  ZeroLayout L;
  CompensatedSum var;
  for (int j = 1; j < table.order(); ++j) {
    L.chars.push_back(j);
    L.offset.push_back(L.alpha.size());
    for (double g : zeros.ordinates_below(j, T)) {
      const double w = 0.25 + g * g;
      L.alpha.push_back(2.0 / std::sqrt(w));
      var += 2.0 / w;
      ++L.real_count;
    }
    while (L.alpha.size() % kPhasesPerWord != 0) L.alpha.push_back(0.0);
  }
  L.offset.push_back(L.alpha.size());
  L.variance = var.value();
  return L;
}

struct BlockResult {
  std::vector<std::array<std::uint64_t, 4>> counts;  // per residue
  std::vector<std::uint64_t> exceed_x1;              // per threshold
  std::vector<std::vector<std::uint64_t>> exceed_x2;  // per residue, per threshold
  CompensatedSum sum_x1, sum_x1_sq;
};

std::uint64_t sample_key(std::uint64_t seed, std::uint64_t s) {
  return mix64(mix64(seed ^ kGolden) + s * kGolden);
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double QuadrantEstimate::frequency(int quadrant) const {
  return N == 0 ? 0.0 : static_cast<double>(counts.at(static_cast<std::size_t>(quadrant))) / N;
}

double QuadrantEstimate::standard_error(int quadrant) const {
  const double p = frequency(quadrant);
  return N == 0 ? 0.0 : std::sqrt(p * (1 - p) / static_cast<double>(N));
}

MonteCarloResult sample_X(const SampleSpec& spec, const CharacterTable& table,
                          const ZeroTable& zeros) {
  if (spec.N == 0) throw ConfigError("mc: N must be at least 1");
  if (!(spec.T > 0)) throw ConfigError("mc: T must be positive");
  if (spec.residues.empty()) throw ConfigError("mc: no residues requested");
  if (spec.antithetic && spec.N % 2 != 0) throw ConfigError("mc: antithetic sampling needs even N");
  for (long long a : spec.residues)
    if (a % table.modulus() == 0) throw ConfigError("mc: residue must be coprime to q");

  const ZeroLayout L = layout(table, zeros, spec.T);
  const std::size_t nr = spec.residues.size();
  const std::size_t nc = L.chars.size();
  const std::size_t nw = spec.thresholds.size();
  std::vector<double> rot_re(nr * nc), rot_im(nr * nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) {
      const auto w = table.value(L.chars[c], spec.residues[r]);
      rot_re[r * nc + c] = w.real();
      rot_im[r * nc + c] = w.imag();
    }
  const auto& tab = phase_table().cs;
  const std::uint64_t nblocks = (spec.N + kBlock - 1) / kBlock;
  std::vector<BlockResult> blocks(nblocks);

  auto run_block = [&](std::uint64_t b, std::vector<double>& wre, std::vector<double>& wim) {
    BlockResult& br = blocks[b];
    br.counts.assign(nr, {});
    br.exceed_x1.assign(nw, 0);
    br.exceed_x2.assign(nr, std::vector<std::uint64_t>(nw, 0));
    const std::uint64_t end = std::min(spec.N, (b + 1) * kBlock);
    for (std::uint64_t s = b * kBlock; s < end; ++s) {
      const bool negate = spec.antithetic && (s & 1u);
      const std::uint64_t key = sample_key(spec.seed, spec.antithetic ? (s & ~std::uint64_t{1}) : s);
      const std::uint64_t flip = negate ? kPhaseCount / 2 : 0;
      std::uint64_t counter = 0;
      for (std::size_t c = 0; c < nc; ++c) {
        double re = 0.0, im = 0.0;
        for (std::size_t z = L.offset[c]; z < L.offset[c + 1]; z += kPhasesPerWord) {
          std::uint64_t word = mix64(key + (++counter) * kGolden);
          for (int k = 0; k < kPhasesPerWord; ++k) {
            const std::uint64_t idx = ((word & kPhaseMask) + flip) & kPhaseMask;
            word >>= kPhaseBits;
            const double a = L.alpha[z + static_cast<std::size_t>(k)];
            if (spec.sampler == Sampler::fast) {
              re += a * tab[2 * idx];
              im += a * tab[2 * idx + 1];
            } else {
              const double t = 2.0 * std::numbers::pi * static_cast<double>(idx) / kPhaseCount;
              re += a * std::cos(t);
              im += a * std::sin(t);
            }
          }
        }
        wre[c] = re;
        wim[c] = im;
      }
      double x1 = 0.0;
      for (std::size_t c = 0; c < nc; ++c) x1 += wre[c];
      br.sum_x1 += x1;
      br.sum_x1_sq += x1 * x1;
      for (std::size_t k = 0; k < nw; ++k)
        if (x1 >= spec.thresholds[k]) ++br.exceed_x1[k];
      for (std::size_t r = 0; r < nr; ++r) {
        double x2 = 0.0;
        for (std::size_t c = 0; c < nc; ++c)
          x2 += rot_re[r * nc + c] * wre[c] - rot_im[r * nc + c] * wim[c];
        const int q = (x1 > 0 ? 0 : 2) + (x2 > 0 ? 0 : 1);
        ++br.counts[r][static_cast<std::size_t>(q)];
        for (std::size_t k = 0; k < nw; ++k)
          if (x2 >= spec.thresholds[k]) ++br.exceed_x2[r][k];
      }
    }
  };

  if (spec.sampler == Sampler::reference) {
    std::vector<double> wre(nc), wim(nc);
    for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b, wre, wim);
  } else {
#ifdef _OPENMP
    const int threads = spec.workers > 0 ? spec.workers : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
#endif
    {
      std::vector<double> wre(nc), wim(nc);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 1)
#endif
      for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b)
        run_block(static_cast<std::uint64_t>(b), wre, wim);
    }
  }

  MonteCarloResult out;
  out.zeros_used = L.real_count;
  out.expected_variance = L.variance;
  CompensatedSum s1, s2;
  for (std::size_t r = 0; r < nr; ++r) {
    QuadrantEstimate e;
    e.a = spec.residues[r];
    e.N = spec.N;
    for (std::size_t k = 0; k < nw; ++k) e.exceedances.push_back({spec.thresholds[k], 0, 0});
    out.estimates.push_back(std::move(e));
  }
  for (const auto& br : blocks) {
    s1 += br.sum_x1.value();
    s2 += br.sum_x1_sq.value();
    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t q = 0; q < 4; ++q) out.estimates[r].counts[q] += br.counts[r][q];
      for (std::size_t k = 0; k < nw; ++k) {
        out.estimates[r].exceedances[k].count_x1 += br.exceed_x1[k];
        out.estimates[r].exceedances[k].count_x2 += br.exceed_x2[r][k];
      }
    }
  }
  const double n = static_cast<double>(spec.N);
  out.mean_x1 = s1.value() / n;
  out.variance_x1 = spec.N > 1 ? (s2.value() - n * out.mean_x1 * out.mean_x1) / (n - 1) : 0.0;
  return out;
}

double estimate_variance(const SampleSpec& spec, const CharacterTable& table,
                         const ZeroTable& zeros) {
  return sample_X(spec, table, zeros).variance_x1;
}

}  // namespace race
