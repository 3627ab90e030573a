#include "ramalab/ensembles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ramalab/errors.hpp"

namespace ramalab {

bool is_valid_permutation(const Permutation& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

const char* constraint_name(Constraint c) {
    switch (c) {
        case Constraint::None: return "none";
        case Constraint::Connected: return "connected";
        case Constraint::SimpleConnected: return "simple_connected";
    }
    throw std::invalid_argument("unknown constraint");
}

std::string ensemble_tag(Family f, Constraint c) {
    std::string prefix;
    switch (c) {
        case Constraint::None: prefix = ""; break;
        case Constraint::Connected: prefix = "C"; break;
        case Constraint::SimpleConnected: prefix = "SC"; break;
    }
    return prefix + family_tag(f);
}

std::pair<Family, Constraint> ensemble_from_tag(const std::string& tag) {
    if (tag.empty()) throw std::invalid_argument("empty ensemble tag");
    Constraint c = Constraint::None;
    std::size_t start = 0;
    if (tag.size() >= 3 && tag[0] == 'S' && tag[1] == 'C') {
        c = Constraint::SimpleConnected;
        start = 2;
    } else if (tag.size() >= 2 && tag[0] == 'C') {
        c = Constraint::Connected;
        start = 1;
    }
    if (tag.size() != start + 1) throw std::invalid_argument("bad ensemble tag: " + tag);
    return {family_from_tag(tag[start]), c};
}

void EnsembleSpec::validate() const {
    if (n_vertices < 2 || n_vertices % 2 != 0) {
        throw std::invalid_argument("ensemble requires even N >= 2");
    }
    if (degree < 1) throw std::invalid_argument("ensemble requires degree >= 1");
    if ((family == Family::Permutation || family == Family::SingleCycle) && degree % 2 != 0) {
        throw std::invalid_argument("permutation-based families require even degree");
    }
    if (max_rejections < 1) throw std::invalid_argument("max_rejections must be positive");
}

Permutation sample_permutation(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_permutation: n must be >= 1");
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    shuffle_uniform(p, rng);
    return p;
}

Permutation sample_n_cycle(int n, Rng& rng) {
    if (n < 2) throw std::invalid_argument("sample_n_cycle: n must be >= 2");
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    // Sattolo: j drawn strictly below i, so the result is a single n-cycle.
    for (std::size_t i = p.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(p[i], p[j]);
    }
    return p;
}

PerfectMatching sample_perfect_matching(int n, Rng& rng) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("sample_perfect_matching: n must be even and >= 2");
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    shuffle_uniform(order, rng);
    PerfectMatching m;
    m.pairs.reserve(static_cast<std::size_t>(n) / 2);
    for (int k = 0; k < n; k += 2) {
        int a = order[static_cast<std::size_t>(k)];
        int b = order[static_cast<std::size_t>(k) + 1];
        if (a > b) std::swap(a, b);
        m.pairs.emplace_back(a, b);
    }
    return m;
}

RegularGraph build_bipartite(int n_vertices, int degree, std::span<const Permutation> perms) {
    if (n_vertices < 2 || n_vertices % 2 != 0) {
        throw std::invalid_argument("build_bipartite: N must be even and >= 2");
    }
    const int half = n_vertices / 2;
    if (static_cast<int>(perms.size()) != degree) {
        throw std::invalid_argument("build_bipartite: need exactly d permutations");
    }
    for (const auto& p : perms) {
        if (static_cast<int>(p.size()) != half || !is_valid_permutation(p)) {
            throw std::invalid_argument("build_bipartite: permutations must act on {1..N/2}");
        }
    }
    for (int i = 0; i < half; ++i) {
        if (perms[0][static_cast<std::size_t>(i)] != i) {
            throw std::invalid_argument("build_bipartite: first permutation must be the identity");
        }
    }
    RegularGraph g;
    g.n_vertices = n_vertices;
    g.degree = degree;
    g.family = Family::Bipartite;
    g.bipartite = true;
    g.edges.reserve(static_cast<std::size_t>(half) * static_cast<std::size_t>(degree));
    for (const auto& p : perms) {
        for (int i = 0; i < half; ++i) {
            g.edges.emplace_back(i + 1, p[static_cast<std::size_t>(i)] + 1 + half);
        }
    }
    return g;
}

RegularGraph build_perm_model(int n_vertices, int degree, std::span<const Permutation> perms) {
    if (degree % 2 != 0 || degree < 2) {
        throw std::invalid_argument("build_perm_model: degree must be even");
    }
    if (static_cast<int>(perms.size()) != degree / 2) {
        throw std::invalid_argument("build_perm_model: need exactly d/2 permutations");
    }
    for (const auto& p : perms) {
        if (static_cast<int>(p.size()) != n_vertices || !is_valid_permutation(p)) {
            throw std::invalid_argument("build_perm_model: permutations must act on {1..N}");
        }
    }
    RegularGraph g;
    g.n_vertices = n_vertices;
    g.degree = degree;
    g.family = Family::Permutation;
    g.edges.reserve(static_cast<std::size_t>(n_vertices) * perms.size());
    for (const auto& p : perms) {
        for (int i = 0; i < n_vertices; ++i) {
            const int j = p[static_cast<std::size_t>(i)];
            // One edge {i, p(i)} per vertex: a fixed point is a self-loop
            // (degree 2), a 2-cycle emits its edge from both endpoints.
            g.edges.emplace_back(std::min(i, j) + 1, std::max(i, j) + 1);
        }
    }
    return g;
}

RegularGraph build_matching_model(int n_vertices, int degree,
                                  std::span<const PerfectMatching> matchings) {
    if (n_vertices < 2 || n_vertices % 2 != 0) {
        throw std::invalid_argument("build_matching_model: N must be even and >= 2");
    }
    if (static_cast<int>(matchings.size()) != degree) {
        throw std::invalid_argument("build_matching_model: need exactly d matchings");
    }
    RegularGraph g;
    g.n_vertices = n_vertices;
    g.degree = degree;
    g.family = Family::Matching;
    g.edges.reserve(static_cast<std::size_t>(n_vertices) / 2 * static_cast<std::size_t>(degree));
    for (const auto& m : matchings) {
        if (static_cast<int>(m.pairs.size()) != n_vertices / 2) {
            throw std::invalid_argument("build_matching_model: matching on wrong vertex count");
        }
        std::vector<char> seen(static_cast<std::size_t>(n_vertices), 0);
        for (const auto& [a, b] : m.pairs) {
            if (a < 0 || b < 0 || a >= n_vertices || b >= n_vertices || a == b ||
                seen[static_cast<std::size_t>(a)] || seen[static_cast<std::size_t>(b)]) {
                throw std::invalid_argument("build_matching_model: not a perfect matching");
            }
            seen[static_cast<std::size_t>(a)] = seen[static_cast<std::size_t>(b)] = 1;
            g.edges.emplace_back(std::min(a, b) + 1, std::max(a, b) + 1);
        }
    }
    return g;
}

namespace {

RegularGraph draw_base(const EnsembleSpec& spec, Rng& rng) {
    switch (spec.family) {
        case Family::Bipartite: {
            const int half = spec.n_vertices / 2;
            std::vector<Permutation> perms;
            perms.reserve(static_cast<std::size_t>(spec.degree));
            Permutation identity(static_cast<std::size_t>(half));
            std::iota(identity.begin(), identity.end(), 0);
            perms.push_back(std::move(identity));
            for (int j = 1; j < spec.degree; ++j) perms.push_back(sample_permutation(half, rng));
            return build_bipartite(spec.n_vertices, spec.degree, perms);
        }
        case Family::Permutation: {
            std::vector<Permutation> perms;
            perms.reserve(static_cast<std::size_t>(spec.degree / 2));
            for (int j = 0; j < spec.degree / 2; ++j) perms.push_back(sample_permutation(spec.n_vertices, rng));
            return build_perm_model(spec.n_vertices, spec.degree, perms);
        }
        case Family::SingleCycle: {
            std::vector<Permutation> perms;
            perms.reserve(static_cast<std::size_t>(spec.degree / 2));
            for (int j = 0; j < spec.degree / 2; ++j) perms.push_back(sample_n_cycle(spec.n_vertices, rng));
            RegularGraph g = build_perm_model(spec.n_vertices, spec.degree, perms);
            g.family = Family::SingleCycle;
            return g;
        }
        case Family::Matching: {
            std::vector<PerfectMatching> matchings;
            matchings.reserve(static_cast<std::size_t>(spec.degree));
            for (int j = 0; j < spec.degree; ++j) matchings.push_back(sample_perfect_matching(spec.n_vertices, rng));
            return build_matching_model(spec.n_vertices, spec.degree, matchings);
        }
    }
    throw std::invalid_argument("unknown family");
}

bool satisfies(Constraint c, const RegularGraph& g) {
    switch (c) {
        case Constraint::None: return true;
        case Constraint::Connected: return is_connected(g);
        case Constraint::SimpleConnected: return is_simple(g) && is_connected(g);
    }
    return false;
}

}  // namespace

SampleOutcome sample_ensemble(const EnsembleSpec& spec, Rng& rng) {
    spec.validate();
    int rejections = 0;
    while (rejections <= spec.max_rejections) {
        RegularGraph g = draw_base(spec, rng);
        if (satisfies(spec.constraint, g)) {
            return {std::move(g), rejections};
        }
        ++rejections;
    }
    throw SamplingExhaustedError(
        "sample_ensemble: " + ensemble_tag(spec.family, spec.constraint) + " with N=" +
        std::to_string(spec.n_vertices) + " d=" + std::to_string(spec.degree) + " exceeded " +
        std::to_string(spec.max_rejections) + " rejections");
}

}  // namespace ramalab
