#include <benchmark/benchmark.h>

#include "ramalab/ensembles.hpp"

namespace {

using namespace ramalab;

// Rejection sampling cost, including the connectivity/simplicity filters.
void BM_SampleEnsemble(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto constraint = static_cast<Constraint>(state.range(1));
    Rng rng(4242);
    EnsembleSpec spec;
    spec.family = Family::Matching;
    spec.constraint = constraint;
    spec.n_vertices = n;
    spec.degree = 3;
    std::int64_t rejections = 0;
    for (auto _ : state) {
        const auto outcome = sample_ensemble(spec, rng);
        rejections += outcome.rejections;
        benchmark::DoNotOptimize(outcome.graph.edges.data());
    }
    state.counters["rejections_per_draw"] =
        benchmark::Counter(static_cast<double>(rejections) / state.iterations());
}

void BM_SamplePermutation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_permutation(n, rng));
    }
    state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK(BM_SampleEnsemble)
    ->Args({1002, static_cast<int>(Constraint::None)})
    ->Args({1002, static_cast<int>(Constraint::Connected)})
    ->Args({1002, static_cast<int>(Constraint::SimpleConnected)})
    ->Args({5022, static_cast<int>(Constraint::SimpleConnected)});
BENCHMARK(BM_SamplePermutation)->Arg(1002)->Arg(20000);
