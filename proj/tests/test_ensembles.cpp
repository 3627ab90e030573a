#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "ramalab/ensembles.hpp"
#include "ramalab/errors.hpp"
#include "ramalab/spectra.hpp"
#include "test_helpers.hpp"

using namespace ramalab;
using namespace testutil;

TEST_CASE("sample_permutation basics") {
    Rng rng(1);
    CHECK(sample_permutation(1, rng) == Permutation{0});
    CHECK_THROWS_AS(sample_permutation(0, rng), std::invalid_argument);

    Rng a(7), b(7);
    CHECK(sample_permutation(20, a) == sample_permutation(20, b));
}

TEST_CASE("sample_permutation is uniform over S_3") {
    Rng rng(11);
    std::map<std::string, int> counts;
    const int draws = 6000;
    for (int i = 0; i < draws; ++i) counts[perm_key(sample_permutation(3, rng))]++;
    CHECK(counts.size() == 6);
    // each count is Binomial(6000, 1/6): 1000 +- 5 sigma, sigma ~ 28.87
    for (const auto& [key, count] : counts) {
        CAPTURE(key);
        CHECK(std::abs(count - 1000) <= 145);
    }
}

TEST_CASE("sample_n_cycle basics") {
    Rng rng(5);
    CHECK(sample_n_cycle(2, rng) == Permutation{1, 0});
    CHECK_THROWS_AS(sample_n_cycle(1, rng), std::invalid_argument);

    for (int i = 0; i < 50; ++i) {
        const Permutation p = sample_n_cycle(3, rng);
        for (std::size_t v = 0; v < p.size(); ++v) CHECK(p[v] != static_cast<int>(v));
    }
}

TEST_CASE("sample_n_cycle draws a single cycle of full length") {
    Rng rng(17);
    for (int n : {4, 9, 30}) {
        for (int rep = 0; rep < 20; ++rep) {
            const Permutation p = sample_n_cycle(n, rng);
            int v = 0, len = 0;
            do {
                v = p[static_cast<std::size_t>(v)];
                ++len;
            } while (v != 0);
            CHECK(len == n);
        }
    }
}

TEST_CASE("sample_n_cycle is uniform over the 6 cyclic permutations of 4 elements") {
    Rng rng(23);
    std::map<std::string, int> counts;
    for (int i = 0; i < 6000; ++i) counts[perm_key(sample_n_cycle(4, rng))]++;
    CHECK(counts.size() == 6);
    for (const auto& [key, count] : counts) {
        CAPTURE(key);
        CHECK(std::abs(count - 1000) <= 145);
    }
}

TEST_CASE("sample_perfect_matching basics") {
    Rng rng(3);
    const PerfectMatching m = sample_perfect_matching(2, rng);
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.pairs[0] == std::pair<int, int>{0, 1});
    CHECK_THROWS_AS(sample_perfect_matching(5, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_perfect_matching(0, rng), std::invalid_argument);
}

TEST_CASE("sample_perfect_matching is uniform over the 3 matchings of 4 vertices") {
    Rng rng(29);
    std::map<std::string, int> counts;
    for (int i = 0; i < 9000; ++i) counts[matching_key(sample_perfect_matching(4, rng))]++;
    CHECK(counts.size() == 3);
    // Binomial(9000, 1/3): 3000 +- 5 sigma, sigma ~ 44.7
    for (const auto& [key, count] : counts) {
        CAPTURE(key);
        CHECK(std::abs(count - 3000) <= 224);
    }
}

TEST_CASE("sample_perfect_matching partitions the vertex set") {
    Rng rng(31);
    for (int rep = 0; rep < 30; ++rep) {
        const PerfectMatching m = sample_perfect_matching(12, rng);
        std::set<int> seen;
        for (const auto& [a, b] : m.pairs) {
            CHECK(a != b);
            seen.insert(a);
            seen.insert(b);
        }
        CHECK(seen.size() == 12);
    }
}

TEST_CASE("build_bipartite: all-identity permutations give three triple edges") {
    const RegularGraph g = triple_edges_disconnected();
    CHECK(g.bipartite);
    CHECK(g.edges.size() == 9);
    CHECK_FALSE(is_connected(g));
    CHECK_FALSE(is_simple(g));
    const auto spectrum = dense_spectrum(g);
    // three components, each a triple edge with eigenvalues +-3
    for (int i = 0; i < 3; ++i) {
        CHECK(spectrum[static_cast<std::size_t>(i)] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(spectrum[static_cast<std::size_t>(3 + i)] == doctest::Approx(-3.0).epsilon(1e-12));
    }
}

TEST_CASE("build_bipartite: cyclic shifts give K_{3,3}") {
    const RegularGraph g = k33();
    CHECK(is_connected(g));
    CHECK(is_simple(g));
    const auto spectrum = dense_spectrum(g);
    CHECK(spectrum[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(spectrum[5] == doctest::Approx(-3.0).epsilon(1e-12));
    for (int i = 1; i <= 4; ++i) {
        CHECK(std::abs(spectrum[static_cast<std::size_t>(i)]) < 1e-9);
    }
}

TEST_CASE("build_bipartite output always crosses the bipartition") {
    Rng rng(37);
    for (int rep = 0; rep < 20; ++rep) {
        EnsembleSpec spec;
        spec.family = Family::Bipartite;
        spec.n_vertices = 16;
        spec.degree = 3;
        const auto [g, rejections] = sample_ensemble(spec, rng);
        CHECK(g.bipartite);
        for (const auto& [u, v] : g.edges) {
            CHECK(u <= 8);
            CHECK(v > 8);
        }
    }
}

TEST_CASE("build_bipartite argument checks") {
    Permutation id(3);
    for (int i = 0; i < 3; ++i) id[static_cast<std::size_t>(i)] = i;
    Permutation shifted = {1, 2, 0};
    const std::vector<Permutation> wrong_len = {id, Permutation{0, 1}, id};
    CHECK_THROWS_AS(build_bipartite(6, 3, wrong_len), std::invalid_argument);
    const std::vector<Permutation> not_identity_first = {shifted, id, id};
    CHECK_THROWS_AS(build_bipartite(6, 3, not_identity_first), std::invalid_argument);
}

TEST_CASE("build_perm_model: a 4-cycle permutation gives C_4") {
    const RegularGraph g = cycle_graph(4);
    CHECK(g.edges.size() == 4);
    const auto edges = sorted_edges(g);
    const std::vector<std::pair<int, int>> expected = {{1, 2}, {1, 4}, {2, 3}, {3, 4}};
    CHECK(edges == expected);
    for (int d : g.weighted_degrees()) CHECK(d == 2);
}

TEST_CASE("build_perm_model: identity permutation gives self-loops that count double") {
    Permutation id = {0, 1};
    const std::vector<Permutation> perms = {id};
    const RegularGraph g = build_perm_model(2, 2, perms);
    const auto edges = sorted_edges(g);
    const std::vector<std::pair<int, int>> expected = {{1, 1}, {2, 2}};
    CHECK(edges == expected);
    for (int d : g.weighted_degrees()) CHECK(d == 2);
    const auto spectrum = dense_spectrum(g);  // a_ii = 2 for each loop
    CHECK(spectrum[0] == doctest::Approx(2.0));
    CHECK(spectrum[1] == doctest::Approx(2.0));
}

TEST_CASE("build_perm_model: an involution doubles its edges") {
    Permutation swap_pairs = {1, 0, 3, 2};  // (12)(34)
    const std::vector<Permutation> perms = {swap_pairs};
    const RegularGraph g = build_perm_model(4, 2, perms);
    const auto edges = sorted_edges(g);
    const std::vector<std::pair<int, int>> expected = {{1, 2}, {1, 2}, {3, 4}, {3, 4}};
    CHECK(edges == expected);
    for (int d : g.weighted_degrees()) CHECK(d == 2);
    CHECK_FALSE(is_simple(g));
}

TEST_CASE("build_perm_model rejects odd degree") {
    Permutation id = {0, 1, 2, 3};
    const std::vector<Permutation> perms = {id};
    CHECK_THROWS_AS(build_perm_model(4, 3, perms), std::invalid_argument);
}

TEST_CASE("build_matching_model: triple edge on two vertices") {
    PerfectMatching m;
    m.pairs = {{0, 1}};
    const std::vector<PerfectMatching> ms = {m, m, m};
    const RegularGraph g = build_matching_model(2, 3, ms);
    CHECK(g.edges.size() == 3);
    const auto spectrum = dense_spectrum(g);
    CHECK(spectrum[0] == doctest::Approx(3.0));
    CHECK(spectrum[1] == doctest::Approx(-3.0));
}

TEST_CASE("build_matching_model: the published 8-vertex example is 3-regular") {
    // Matchings read off consecutive pairs of (43876152), (31248675), (87641325).
    const auto from_sequence = [](const std::vector<int>& order) {
        PerfectMatching m;
        for (std::size_t i = 0; i < order.size(); i += 2) {
            m.pairs.emplace_back(order[i] - 1, order[i + 1] - 1);
        }
        return m;
    };
    const std::vector<PerfectMatching> ms = {
        from_sequence({4, 3, 8, 7, 6, 1, 5, 2}),
        from_sequence({3, 1, 2, 4, 8, 6, 7, 5}),
        from_sequence({8, 7, 6, 4, 1, 3, 2, 5}),
    };
    const RegularGraph g = build_matching_model(8, 3, ms);
    CHECK(g.edges.size() == 12);
    for (int d : g.weighted_degrees()) CHECK(d == 3);
    for (const auto& [u, v] : g.edges) CHECK(u != v);
}

TEST_CASE("build_matching_model rejects malformed matchings") {
    PerfectMatching short_m;
    short_m.pairs = {{0, 1}};
    const std::vector<PerfectMatching> ms = {short_m};
    CHECK_THROWS_AS(build_matching_model(4, 1, ms), std::invalid_argument);
}

TEST_CASE("matching-model graphs never contain self-loops") {
    Rng rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        EnsembleSpec spec;
        spec.family = Family::Matching;
        spec.n_vertices = 30;
        spec.degree = 4;
        const auto [g, rejections] = sample_ensemble(spec, rng);
        for (const auto& [u, v] : g.edges) CHECK(u != v);
    }
}

TEST_CASE("is_connected and is_simple on the reference graphs") {
    CHECK(is_connected(k33()));
    CHECK(is_simple(k33()));
    CHECK_FALSE(is_connected(triple_edges_disconnected()));

    RegularGraph loop;
    loop.n_vertices = 2;
    loop.degree = 2;
    loop.edges = {{1, 1}, {2, 2}};
    CHECK_FALSE(is_simple(loop));
}

TEST_CASE("sample_ensemble postconditions per constraint") {
    Rng rng(43);
    EnsembleSpec spec;
    spec.family = Family::Bipartite;
    spec.constraint = Constraint::SimpleConnected;
    spec.n_vertices = 6;
    spec.degree = 3;
    for (int rep = 0; rep < 25; ++rep) {
        const auto [g, rejections] = sample_ensemble(spec, rng);
        CHECK(is_simple(g));
        CHECK(is_connected(g));
        CHECK(rejections >= 0);
    }

    spec.family = Family::Matching;
    spec.constraint = Constraint::None;
    spec.n_vertices = 8;
    const auto outcome = sample_ensemble(spec, rng);
    CHECK(outcome.rejections == 0);  // unconstrained draws are never rejected
}

TEST_CASE("sample_ensemble is deterministic in (spec, seed)") {
    EnsembleSpec spec;
    spec.family = Family::Permutation;
    spec.constraint = Constraint::Connected;
    spec.n_vertices = 4;
    spec.degree = 2;
    Rng a(99), b(99);
    const auto ga = sample_ensemble(spec, a);
    const auto gb = sample_ensemble(spec, b);
    CHECK(ga.rejections == gb.rejections);
    CHECK(sorted_edges(ga.graph) == sorted_edges(gb.graph));
}

TEST_CASE("ensemble uniformity at tiny size: the 3 matchings of (I, N=4, d=1)") {
    Rng rng(47);
    EnsembleSpec spec;
    spec.family = Family::Matching;
    spec.n_vertices = 4;
    spec.degree = 1;
    std::map<std::vector<std::pair<int, int>>, int> counts;
    const int draws = 9000;
    for (int i = 0; i < draws; ++i) {
        counts[sorted_edges(sample_ensemble(spec, rng).graph)]++;
    }
    REQUIRE(counts.size() == 3);
    double chi2 = 0.0;
    for (const auto& [edges, count] : counts) {
        const double d = count - 3000.0;
        chi2 += d * d / 3000.0;
    }
    CHECK(chi2 < 9.21034);  // chi-square, 2 dof, alpha = .01
}

TEST_CASE("degree regularity holds across families") {
    Rng rng(53);
    const std::vector<EnsembleSpec> specs = [] {
        std::vector<EnsembleSpec> out;
        EnsembleSpec s;
        s.family = Family::Bipartite;
        s.n_vertices = 26;
        s.degree = 3;
        out.push_back(s);
        s.family = Family::Permutation;
        s.degree = 4;
        out.push_back(s);
        s.family = Family::SingleCycle;
        s.degree = 6;
        out.push_back(s);
        s.family = Family::Matching;
        s.degree = 5;
        out.push_back(s);
        return out;
    }();
    for (const auto& spec : specs) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto [g, rejections] = sample_ensemble(spec, rng);
            for (int d : g.weighted_degrees()) {
                CAPTURE(family_tag(spec.family));
                CHECK(d == spec.degree);
            }
        }
    }
}

TEST_CASE("sample_ensemble validates the spec") {
    Rng rng(1);
    EnsembleSpec spec;
    spec.family = Family::Permutation;
    spec.n_vertices = 10;
    spec.degree = 3;  // odd degree is impossible for the permutation model
    CHECK_THROWS_AS(sample_ensemble(spec, rng), std::invalid_argument);
    spec.degree = 2;
    spec.n_vertices = 7;
    CHECK_THROWS_AS(sample_ensemble(spec, rng), std::invalid_argument);
}

TEST_CASE("rejection cap raises SamplingExhaustedError") {
    Rng rng(1);
    EnsembleSpec spec;
    spec.family = Family::Matching;
    spec.constraint = Constraint::SimpleConnected;
    // two matchings on 2 vertices always form a doubled edge, never simple
    spec.n_vertices = 2;
    spec.degree = 2;
    spec.max_rejections = 50;
    CHECK_THROWS_AS(sample_ensemble(spec, rng), SamplingExhaustedError);
}

TEST_CASE("graph serialization round-trips") {
    Rng rng(59);
    for (Family family : {Family::Bipartite, Family::Permutation, Family::SingleCycle,
                          Family::Matching}) {
        EnsembleSpec spec;
        spec.family = family;
        spec.n_vertices = 12;
        spec.degree = 4;
        const auto [g, rejections] = sample_ensemble(spec, rng);
        const RegularGraph back = graph_from_string(graph_to_string(g));
        CHECK(back.n_vertices == g.n_vertices);
        CHECK(back.degree == g.degree);
        CHECK(back.family == g.family);
        CHECK(sorted_edges(back) == sorted_edges(g));
    }
}

TEST_CASE("graph serialization format") {
    RegularGraph g;
    g.n_vertices = 2;
    g.degree = 2;
    g.family = Family::Permutation;
    g.edges = {{1, 1}, {2, 2}};
    CHECK(graph_to_string(g) == "2 2 G\n1 1\n2 2\n");
    CHECK_THROWS_AS(graph_from_string("2 2 X\n1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_string("2 2 G\n1 1\n"), std::invalid_argument);  // vertex 2 has degree 0
}

TEST_CASE("ensemble tags round-trip") {
    CHECK(ensemble_tag(Family::Matching, Constraint::None) == "I");
    CHECK(ensemble_tag(Family::Matching, Constraint::Connected) == "CI");
    CHECK(ensemble_tag(Family::Bipartite, Constraint::SimpleConnected) == "SCB");
    const auto [f, c] = ensemble_from_tag("SCB");
    CHECK(f == Family::Bipartite);
    CHECK(c == Constraint::SimpleConnected);
    CHECK_THROWS_AS(ensemble_from_tag("XYZ"), std::invalid_argument);
}
