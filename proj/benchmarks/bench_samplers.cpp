#include <benchmark/benchmark.h>

#include "gmgd/dickman.hpp"
#include "gmgd/large_jumps.hpp"
#include "gmgd/special_functions.hpp"
#include "gmgd/validation.hpp"

namespace {

void BM_UpperGammaZeroSeries(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gmgd::upper_gamma_zero(x));
    x = x < 0.9 ? x + 1e-6 : 0.1;
  }
}
BENCHMARK(BM_UpperGammaZeroSeries);

void BM_UpperGammaZeroFraction(benchmark::State& state) {
  double x = 1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gmgd::upper_gamma_zero(x));
    x = x < 40.0 ? x + 1e-6 : 1.5;
  }
}
BENCHMARK(BM_UpperGammaZeroFraction);

void BM_SampleRadialSmallA(benchmark::State& state) {
  gmgd::Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gmgd::sample_radial(0.1, 1.0, 0.5, rng));
  }
}
BENCHMARK(BM_SampleRadialSmallA);

void BM_SampleRadialLargeA(benchmark::State& state) {
  gmgd::Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gmgd::sample_radial(1.5, 1.0, 0.5, rng));
  }
}
BENCHMARK(BM_SampleRadialLargeA);

void BM_DickmanMarginal(benchmark::State& state) {
  const gmgd::DickmanSpec spec(gmgd::SpectralMeasure::uniform_circle(30), 0.1);
  gmgd::Rng rng(3);
  const auto truncation = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gmgd::sample_dickman_marginal(spec, truncation, rng));
  }
}
BENCHMARK(BM_DickmanMarginal)->Arg(1000)->Arg(10000);

void BM_LargeJumpPath(benchmark::State& state) {
  const auto law =
      gmgd::build_large_jump_law(gmgd::GmgdSpec::paper_study(30), 0.1);
  gmgd::Rng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(law.sample_path(1.0, gmgd::kDefaultBeta, rng));
  }
}
BENCHMARK(BM_LargeJumpPath);

void BM_MomentStudy(benchmark::State& state) {
  const auto spec = gmgd::GmgdSpec::paper_study(30);
  gmgd::SimulationConfig cfg;
  cfg.epsilon = 0.1;
  cfg.seed = 5;
  const auto times = gmgd::default_time_grid(1.0, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gmgd::moment_study(
        spec, cfg, static_cast<std::size_t>(state.range(0)), times,
        gmgd::StudyTarget::kFullProcess, 1));
  }
}
BENCHMARK(BM_MomentStudy)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
