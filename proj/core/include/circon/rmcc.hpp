#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circon/rational.hpp"

namespace circon {

/// Vertex v_{j,i}: color j in 1..k, index i in 1..n within its color class.
struct VertexId {
    std::size_t color = 0;
    std::size_t index = 0;

    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// d-regular graph with k balanced color classes of n vertices each.
/// Edges are unordered pairs, stored in a fixed list order e_1..e_m.
struct RmccGraph {
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;

    std::size_t m() const { return edges.size(); }
    bool has_edge(VertexId a, VertexId b) const;
    std::size_t degree(VertexId v) const;
};

/// One vertex per color; indices[j-1] = i means v_{j,i} is chosen.
struct MulticoloredClique {
    std::vector<std::size_t> indices;
};

/// Empty iff the graph is simple, d-regular, with balanced classes and
/// in-range vertex labels. Violations are returned as messages, not thrown.
std::vector<std::string> validate(const RmccGraph& g);

/// Lexicographically first properly colored k-clique, if any.
/// Throws GuardExceeded when n^k exceeds `guard`.
std::optional<MulticoloredClique> solve_clique_bruteforce(const RmccGraph& g,
                                                          std::uint64_t guard = 50'000'000);

/// True iff the transversal is a clique of g.
bool is_multicolored_clique(const RmccGraph& g, const MulticoloredClique& c);

struct GeneratedRmcc {
    RmccGraph graph;
    std::optional<MulticoloredClique> planted;
};

/// Seeded generator: planted-clique instances get the clique installed first
/// and the graph regularized around it by edge insertion and edge swaps.
GeneratedRmcc generate(std::size_t k, std::size_t n, std::size_t d, bool planted,
                       std::uint64_t seed);

/// Certified no-instance: cycle v_{1,1} v_{2,1} ... v_{k,1} v_{1,2} ... of
/// length kn with colors repeating 1..k (2-regular, triangle-free for kn > 3).
RmccGraph colored_cycle(std::size_t k, std::size_t n);

/// Complete k-partite graph with classes of size n ((k-1)n-regular, always a
/// yes-instance for k >= 1).
RmccGraph complete_multipartite(std::size_t k, std::size_t n);

}  // namespace circon
