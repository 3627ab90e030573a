#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ramalab/graph.hpp"
#include "ramalab/rng.hpp"

namespace ramalab {

// mapping[i] = image of vertex i, 0-based. External formats are 1-based.
using Permutation = std::vector<int>;

bool is_valid_permutation(const Permutation& p);

// Partition of {0..n-1} into n/2 unordered pairs.
struct PerfectMatching {
    std::vector<std::pair<int, int>> pairs;
};

enum class Constraint : std::uint8_t {
    None,
    Connected,
    SimpleConnected,
};

const char* constraint_name(Constraint c);

struct EnsembleSpec {
    Family family = Family::Matching;
    Constraint constraint = Constraint::None;
    int n_vertices = 0;
    int degree = 0;
    int max_rejections = 10000;

    // Throws std::invalid_argument on structurally impossible combinations
    // (odd N, odd d for the permutation-based families, ...).
    void validate() const;
};

// "I", "CI", "SCI", "CB", ... : constraint prefix + family tag.
std::string ensemble_tag(Family f, Constraint c);
std::pair<Family, Constraint> ensemble_from_tag(const std::string& tag);

// Uniform over all n! permutations.
Permutation sample_permutation(int n, Rng& rng);

// Uniform over the (n-1)! permutations whose cycle decomposition is a single
// n-cycle (Sattolo's single-pass shuffle).
Permutation sample_n_cycle(int n, Rng& rng);

// Uniform over the (n-1)!! perfect matchings: shuffle, then pair consecutive
// entries.
PerfectMatching sample_perfect_matching(int n, Rng& rng);

// Edge set {i, perms[j](i) + N/2} for each side-vertex i and each j.
// perms[0] must be the identity; all perms act on {0..N/2-1}.
RegularGraph build_bipartite(int n_vertices, int degree, std::span<const Permutation> perms);

// Edge {i, perm(i)} for every vertex i and each of the d/2 permutations.
// A fixed point becomes a self-loop (degree contribution 2); a 2-cycle
// contributes the edge twice, once from each endpoint.
RegularGraph build_perm_model(int n_vertices, int degree, std::span<const Permutation> perms);

// Union multigraph of d perfect matchings; never contains self-loops.
RegularGraph build_matching_model(int n_vertices, int degree,
                                  std::span<const PerfectMatching> matchings);

struct SampleOutcome {
    RegularGraph graph;
    int rejections = 0;
};

// Draws from the base family until the constraint holds, so the result is
// uniform over the constrained subset. Throws SamplingExhaustedError after
// spec.max_rejections failed draws.
SampleOutcome sample_ensemble(const EnsembleSpec& spec, Rng& rng);

}  // namespace ramalab
