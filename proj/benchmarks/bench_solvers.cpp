#include <benchmark/benchmark.h>

#include "ramalab/ensembles.hpp"
#include "ramalab/spectra.hpp"
#include "ramalab/tracy_widom.hpp"

namespace {

using namespace ramalab;

RegularGraph sample_graph(int n, int d, std::uint64_t seed) {
    Rng rng(seed);
    EnsembleSpec spec;
    spec.family = Family::Matching;
    spec.constraint = Constraint::Connected;
    spec.n_vertices = n;
    spec.degree = d;
    return sample_ensemble(spec, rng).graph;
}

// Full per-graph cost of the production path: deflated Lanczos at both
// spectrum ends to 1e-10.
void BM_ExtremalSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const RegularGraph g = sample_graph(n, 3, 77);
    for (auto _ : state) {
        benchmark::DoNotOptimize(extremal_nontrivial(g));
    }
}

void BM_DenseOracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const RegularGraph g = sample_graph(n, 3, 78);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dense_spectrum(g));
    }
}

void BM_PainleveSolve(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_painleve_ii());
    }
}

}  // namespace

BENCHMARK(BM_ExtremalSolve)->Arg(502)->Arg(2000)->Arg(5022)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseOracle)->Arg(200)->Arg(502)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PainleveSolve)->Unit(benchmark::kMillisecond);
