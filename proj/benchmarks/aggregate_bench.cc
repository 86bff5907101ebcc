#include <benchmark/benchmark.h>

#include "arimle/agreement.h"
#include "arimle/baselines.h"
#include "arimle/mle.h"
#include "arimle/synth.h"

namespace {

arimle::SyntheticDataset Dataset(std::size_t n) {
  arimle::EnsembleSpec spec = arimle::PaperlikeSpec(1);
  spec.n = n;
  return arimle::Generate(spec);
}

void BM_Arimle(benchmark::State& state) {
  const auto data = Dataset(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(arimle::Arimle(data.matrix));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Arimle)->Arg(270)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Sml(benchmark::State& state) {
  const auto data = Dataset(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(arimle::Sml(data.matrix));
}
BENCHMARK(BM_Sml)->Arg(270)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SolveErrorRates(benchmark::State& state) {
  const auto agreement = arimle::ComputeAgreementRates(Dataset(270).matrix);
  for (auto _ : state) {
    benchmark::DoNotOptimize(arimle::SolveErrorRates(agreement));
  }
}
BENCHMARK(BM_SolveErrorRates);

void BM_Generate(benchmark::State& state) {
  arimle::EnsembleSpec spec = arimle::PaperlikeSpec(2);
  spec.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(arimle::Generate(spec));
}
BENCHMARK(BM_Generate)->Arg(270)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
