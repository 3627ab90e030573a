#include <benchmark/benchmark.h>

#include <vector>

#include "ramalab/ensembles.hpp"
#include "ramalab/spectra.hpp"

namespace {

using namespace ramalab;

RegularGraph sample_graph(int n, int d) {
    Rng rng(1234);
    EnsembleSpec spec;
    spec.family = Family::Matching;
    spec.constraint = Constraint::Connected;
    spec.n_vertices = n;
    spec.degree = d;
    return sample_ensemble(spec, rng).graph;
}

// The adjacency apply dominates large-N eigensolves; this tracks its
// edge-throughput.
void BM_AdjacencyMatvec(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    const RegularGraph g = sample_graph(n, d);
    const AdjacencyOperator op(g);
    std::vector<double> x(static_cast<std::size_t>(n), 1.0);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto _ : state) {
        op.apply(x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
        std::swap(x, y);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edges.size()));
}

}  // namespace

BENCHMARK(BM_AdjacencyMatvec)
    ->Args({1002, 3})
    ->Args({5022, 3})
    ->Args({20000, 3})
    ->Args({20000, 10});

BENCHMARK_MAIN();
