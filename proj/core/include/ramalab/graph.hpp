#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ramalab {

// The four random d-regular constructions. Tags match the file format.
enum class Family : std::uint8_t {
    Bipartite,    // B: identity plus d-1 random permutations of one side
    Permutation,  // G: d/2 random permutations of the vertex set
    SingleCycle,  // H: like G, but permutations are single N-cycles
    Matching,     // I: union of d random perfect matchings
};

char family_tag(Family f);
Family family_from_tag(char tag);

// Undirected multigraph with every vertex of weighted degree d. Vertices are
// labeled 1..N. A self-loop is stored once as (v, v) and contributes 2 to the
// vertex degree and to the diagonal of the adjacency matrix.
struct RegularGraph {
    int n_vertices = 0;
    int degree = 0;
    // Unordered pairs with u <= v; multi-edges appear once per copy.
    std::vector<std::pair<int, int>> edges;
    Family family = Family::Matching;
    // Set by the bipartite construction: every edge crosses
    // {1..N/2} | {N/2+1..N}.
    bool bipartite = false;

    std::vector<int> weighted_degrees() const;
};

bool is_connected(const RegularGraph& g);

// No self-loops and no repeated edge.
bool is_simple(const RegularGraph& g);

// Proper 2-coloring as a +-1 vector indexed by vertex-1, or empty when no
// bipartition exists. Detects bipartite structure regardless of how the
// graph was constructed.
std::vector<double> bipartition_signs(const RegularGraph& g);

// One header line "N d family", then one line "u v" per edge copy.
void write_graph(std::ostream& out, const RegularGraph& g);
RegularGraph read_graph(std::istream& in);

std::string graph_to_string(const RegularGraph& g);
RegularGraph graph_from_string(const std::string& text);

}  // namespace ramalab
