// Serial reference kernels against the parallel fast kernels.

#include <benchmark/benchmark.h>

#include <cstdlib>
#include <string>

#include "race/density.hpp"
#include "race/mcoracle.hpp"

namespace {

const race::Dataset& data() {
  static const race::Dataset d = [] {
    const char* dir = std::getenv("RACE_DENSITY_DATA");
    return race::load_dataset(dir ? dir : RACE_BENCH_DATA_DIR, 11, 2500);
  }();
  return d;
}

const std::vector<race::TruncatedFactor>& factors() {
  static const auto f =
      race::truncated_factors(data().table, 2500, data().zeros, data().constants);
  return f;
}

void lattice(benchmark::State& state, race::Kernel kernel) {
  race::RunConfig cfg;
  cfg.a = 10;
  cfg.C = static_cast<double>(state.range(0));
  cfg.kernel = kernel;
  cfg.workers = kernel == race::Kernel::reference ? 1 : 0;
  for (auto _ : state) {
    const auto r = race::compute_S_and_E3(cfg, data().table, factors(), data().zeros.accuracy());
    benchmark::DoNotOptimize(r.S);
  }
  state.counters["points"] = static_cast<double>((state.range(0) + 1) * (state.range(0) + 1));
}

void sampler(benchmark::State& state, race::Sampler which) {
  race::SampleSpec spec;
  spec.residues = {2, 10};
  spec.T = 1000;
  spec.N = static_cast<std::uint64_t>(state.range(0));
  spec.sampler = which;
  spec.workers = which == race::Sampler::reference ? 1 : 0;
  for (auto _ : state) {
    const auto r = race::sample_X(spec, data().table, data().zeros);
    benchmark::DoNotOptimize(r.mean_x1);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(lattice, reference_serial, race::Kernel::reference)->Arg(40)->Arg(100)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(lattice, fast_parallel, race::Kernel::fast)->Arg(40)->Arg(100)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sampler, reference_serial, race::Sampler::reference)->Arg(20000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sampler, fast_parallel, race::Sampler::fast)->Arg(20000)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
