#include "ramalab/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ramalab {

char family_tag(Family f) {
    switch (f) {
        case Family::Bipartite: return 'B';
        case Family::Permutation: return 'G';
        case Family::SingleCycle: return 'H';
        case Family::Matching: return 'I';
    }
    throw std::invalid_argument("unknown family");
}

Family family_from_tag(char tag) {
    switch (tag) {
        case 'B': return Family::Bipartite;
        case 'G': return Family::Permutation;
        case 'H': return Family::SingleCycle;
        case 'I': return Family::Matching;
        default: throw std::invalid_argument(std::string("unknown family tag '") + tag + "'");
    }
}

std::vector<int> RegularGraph::weighted_degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n_vertices), 0);
    for (const auto& [u, v] : edges) {
        if (u == v) {
            deg[static_cast<std::size_t>(u - 1)] += 2;
        } else {
            deg[static_cast<std::size_t>(u - 1)] += 1;
            deg[static_cast<std::size_t>(v - 1)] += 1;
        }
    }
    return deg;
}

namespace {

// CSR-style adjacency over vertex indices 0..n-1; self-loops dropped (they
// never affect connectivity or 2-colorability).
struct AdjacencyIndex {
    std::vector<int> offsets;
    std::vector<int> neighbors;

    explicit AdjacencyIndex(const RegularGraph& g) {
        const int n = g.n_vertices;
        offsets.assign(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& [u, v] : g.edges) {
            if (u == v) continue;
            ++offsets[static_cast<std::size_t>(u)];
            ++offsets[static_cast<std::size_t>(v)];
        }
        for (int i = 0; i < n; ++i) offsets[static_cast<std::size_t>(i) + 1] += offsets[static_cast<std::size_t>(i)];
        neighbors.resize(offsets[static_cast<std::size_t>(n)]);
        std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
        for (const auto& [u, v] : g.edges) {
            if (u == v) continue;
            neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u - 1)]++)] = v - 1;
            neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v - 1)]++)] = u - 1;
        }
    }

    std::span<const int> operator[](int v) const {
        return {neighbors.data() + offsets[static_cast<std::size_t>(v)],
                neighbors.data() + offsets[static_cast<std::size_t>(v) + 1]};
    }
};

}  // namespace

bool is_connected(const RegularGraph& g) {
    const int n = g.n_vertices;
    if (n <= 0) return false;
    if (n == 1) return true;
    AdjacencyIndex adj(g);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n;
}

bool is_simple(const RegularGraph& g) {
    std::vector<std::uint64_t> keys;
    keys.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) {
        if (u == v) return false;
        keys.push_back(static_cast<std::uint64_t>(u) << 32 | static_cast<std::uint64_t>(v));
    }
    std::sort(keys.begin(), keys.end());
    return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

std::vector<double> bipartition_signs(const RegularGraph& g) {
    const int n = g.n_vertices;
    AdjacencyIndex adj(g);
    for (const auto& [u, v] : g.edges) {
        if (u == v) return {};  // a self-loop is an odd cycle
    }
    std::vector<int> color(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    for (int root = 0; root < n; ++root) {
        if (color[static_cast<std::size_t>(root)] != 0) continue;
        color[static_cast<std::size_t>(root)] = 1;
        stack.push_back(root);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (color[static_cast<std::size_t>(w)] == 0) {
                    color[static_cast<std::size_t>(w)] = -color[static_cast<std::size_t>(v)];
                    stack.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
                    return {};
                }
            }
        }
    }
    return std::vector<double>(color.begin(), color.end());
}

void write_graph(std::ostream& out, const RegularGraph& g) {
    out << g.n_vertices << ' ' << g.degree << ' ' << family_tag(g.family) << '\n';
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

RegularGraph read_graph(std::istream& in) {
    RegularGraph g;
    char tag = 0;
    if (!(in >> g.n_vertices >> g.degree >> tag)) {
        throw std::invalid_argument("graph header: expected \"N d family\"");
    }
    g.family = family_from_tag(tag);
    g.bipartite = g.family == Family::Bipartite;
    int u = 0, v = 0;
    while (in >> u >> v) {
        if (u < 1 || u > g.n_vertices || v < 1 || v > g.n_vertices) {
            throw std::invalid_argument("graph edge endpoint out of range");
        }
        if (u > v) std::swap(u, v);
        g.edges.emplace_back(u, v);
    }
    const auto degrees = g.weighted_degrees();
    for (int d : degrees) {
        if (d != g.degree) throw std::invalid_argument("graph is not degree-regular");
    }
    return g;
}

std::string graph_to_string(const RegularGraph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

RegularGraph graph_from_string(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

}  // namespace ramalab
