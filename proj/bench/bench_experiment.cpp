// Serial reference vs the OpenMP repetition loop on the default experiment.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "colorist/sim.hpp"

namespace {

colorist::sim::ExperimentSpec spec_for(const benchmark::State& state) {
    colorist::sim::ExperimentSpec spec;
    spec.repetitions = static_cast<int>(state.range(0));
    spec.session.seed = 7;
    return spec;
}

void BM_ExperimentSerial(benchmark::State& state) {
    const auto spec = spec_for(state);
    for (auto _ : state) benchmark::DoNotOptimize(colorist::sim::run_experiment_serial(spec));
    state.SetItemsProcessed(state.iterations() * spec.repetitions * 2);
}

void BM_ExperimentOpenMP(benchmark::State& state) {
    const auto spec = spec_for(state);
    for (auto _ : state) benchmark::DoNotOptimize(colorist::sim::run_experiment(spec));
    state.SetItemsProcessed(state.iterations() * spec.repetitions * 2);
    state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_ExperimentSerial)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentOpenMP)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
