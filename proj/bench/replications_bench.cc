#include <benchmark/benchmark.h>

#include "npg/montecarlo.h"
#include "npg/newsvendor.h"
#include "npg/trainer.h"

namespace {

npg::TrainConfig BenchConfig() {
  npg::TrainConfig c;
  c.iterations = 200;
  c.replications = 8;
  return c;
}

void BM_ReplicationsSerial(benchmark::State& state) {
  const npg::Newsvendor game{npg::NewsvendorConfig{}};
  const npg::TrainConfig cfg = BenchConfig();
  for (auto _ : state) {
    benchmark::DoNotOptimize(npg::RunReplicationsSerial(game, cfg));
  }
}
BENCHMARK(BM_ReplicationsSerial)->Unit(benchmark::kMillisecond);

void BM_ReplicationsParallel(benchmark::State& state) {
  const npg::Newsvendor game{npg::NewsvendorConfig{}};
  const npg::TrainConfig cfg = BenchConfig();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(npg::RunReplications(game, cfg, jobs));
  }
}
BENCHMARK(BM_ReplicationsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_GradientMoments(benchmark::State& state) {
  const npg::Newsvendor game{npg::NewsvendorConfig{}};
  const npg::ParamSet p = npg::InitParams(5, 5, 0.3, 1);
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(npg::GradientMoments(
        game, p, npg::PolicyKind::kNetworked, npg::EstimatorKind::kAdvantage,
        20000, 7, jobs));
  }
}
BENCHMARK(BM_GradientMoments)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_GradientMomentsSerial(benchmark::State& state) {
  const npg::Newsvendor game{npg::NewsvendorConfig{}};
  const npg::ParamSet p = npg::InitParams(5, 5, 0.3, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(npg::GradientMomentsSerial(
        game, p, npg::PolicyKind::kNetworked, npg::EstimatorKind::kAdvantage,
        20000, 7));
  }
}
BENCHMARK(BM_GradientMomentsSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
