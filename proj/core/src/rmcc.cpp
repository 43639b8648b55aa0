#include "circon/rmcc.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace circon {

namespace {

std::size_t flat(const RmccGraph& g, VertexId v) { return (v.color - 1) * g.n + (v.index - 1); }

std::vector<char> adjacency_matrix(const RmccGraph& g) {
    const std::size_t nv = g.k * g.n;
    std::vector<char> adj(nv * nv, 0);
    for (const auto& [a, b] : g.edges) {
        adj[flat(g, a) * nv + flat(g, b)] = 1;
        adj[flat(g, b) * nv + flat(g, a)] = 1;
    }
    return adj;
}

}  // namespace

bool RmccGraph::has_edge(VertexId a, VertexId b) const {
    for (const auto& [u, v] : edges)
        if ((u == a && v == b) || (u == b && v == a)) return true;
    return false;
}

std::size_t RmccGraph::degree(VertexId v) const {
    std::size_t deg = 0;
    for (const auto& [a, b] : edges) deg += (a == v) + (b == v);
    return deg;
}

std::vector<std::string> validate(const RmccGraph& g) {
    std::vector<std::string> out;
    if (g.k == 0 || g.n == 0) {
        out.push_back("graph must have at least one color class and one vertex per class");
        return out;
    }
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& [a, b] : g.edges) {
        auto in_range = [&](VertexId v) {
            return v.color >= 1 && v.color <= g.k && v.index >= 1 && v.index <= g.n;
        };
        if (!in_range(a) || !in_range(b)) {
            out.push_back("edge endpoint out of range");
            continue;
        }
        if (a == b) out.push_back("self-loop at v_" + std::to_string(a.color) + "." +
                                  std::to_string(a.index));
        auto key = std::minmax(a, b);
        if (!seen.insert({key.first, key.second}).second)
            out.push_back("duplicate edge v_" + std::to_string(a.color) + "." +
                          std::to_string(a.index) + " -- v_" + std::to_string(b.color) + "." +
                          std::to_string(b.index));
    }
    std::map<VertexId, std::size_t> deg;
    for (const auto& [a, b] : g.edges) {
        ++deg[a];
        ++deg[b];
    }
    for (std::size_t j = 1; j <= g.k; ++j)
        for (std::size_t i = 1; i <= g.n; ++i) {
            const std::size_t dv = deg[{j, i}];
            if (dv != g.d)
                out.push_back("vertex v_" + std::to_string(j) + "." + std::to_string(i) +
                              " has degree " + std::to_string(dv) + ", expected " +
                              std::to_string(g.d));
        }
    return out;
}

bool is_multicolored_clique(const RmccGraph& g, const MulticoloredClique& c) {
    if (c.indices.size() != g.k) return false;
    const auto adj = adjacency_matrix(g);
    const std::size_t nv = g.k * g.n;
    for (std::size_t j = 1; j <= g.k; ++j)
        for (std::size_t h = j + 1; h <= g.k; ++h) {
            VertexId a{j, c.indices[j - 1]}, b{h, c.indices[h - 1]};
            if (!adj[flat(g, a) * nv + flat(g, b)]) return false;
        }
    return true;
}

std::optional<MulticoloredClique> solve_clique_bruteforce(const RmccGraph& g,
                                                          std::uint64_t guard) {
    BigInt space = 1;
    for (std::size_t j = 0; j < g.k; ++j) space *= g.n;
    if (space > guard) throw GuardExceeded("clique search space n^k exceeds guard");

    const auto adj = adjacency_matrix(g);
    const std::size_t nv = g.k * g.n;
    std::vector<std::size_t> idx(g.k, 1);
    while (true) {
        bool ok = true;
        for (std::size_t j = 1; ok && j <= g.k; ++j)
            for (std::size_t h = j + 1; ok && h <= g.k; ++h)
                ok = adj[flat(g, {j, idx[j - 1]}) * nv + flat(g, {h, idx[h - 1]})];
        if (ok) return MulticoloredClique{idx};
        std::size_t j = g.k;
        while (j > 0 && idx[j - 1] == g.n) idx[--j] = 1;
        if (j == 0) return std::nullopt;
        ++idx[j - 1];
    }
}

RmccGraph colored_cycle(std::size_t k, std::size_t n) {
    if (k * n < 3) throw InstanceError("cycle needs at least 3 vertices");
    RmccGraph g{k, n, 2, {}};
    const std::size_t nv = k * n;
    auto at = [&](std::size_t pos) { return VertexId{pos % k + 1, pos / k + 1}; };
    for (std::size_t pos = 0; pos < nv; ++pos) g.edges.emplace_back(at(pos), at((pos + 1) % nv));
    return g;
}

RmccGraph complete_multipartite(std::size_t k, std::size_t n) {
    RmccGraph g{k, n, (k - 1) * n, {}};
    for (std::size_t j = 1; j <= k; ++j)
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t h = j + 1; h <= k; ++h)
                for (std::size_t i2 = 1; i2 <= n; ++i2)
                    g.edges.emplace_back(VertexId{j, i}, VertexId{h, i2});
    return g;
}

GeneratedRmcc generate(std::size_t k, std::size_t n, std::size_t d, bool planted,
                       std::uint64_t seed) {
    const std::size_t nv = k * n;
    if (k == 0 || n == 0) throw InstanceError("k and n must be positive");
    if (d >= nv) throw InstanceError("degree too large for a simple graph on kn vertices");
    if ((nv * d) % 2 != 0) throw InstanceError("kn*d must be even");
    if (planted && d < k - 1) throw InstanceError("planted clique needs degree at least k-1");

    std::mt19937_64 rng(seed);
    auto vert = [&](std::size_t f) { return VertexId{f / n + 1, f % n + 1}; };

    std::vector<char> adj(nv * nv, 0);
    std::vector<std::size_t> deg(nv, 0);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::set<std::pair<std::size_t, std::size_t>> protected_edges;

    auto add = [&](std::size_t a, std::size_t b) {
        adj[a * nv + b] = adj[b * nv + a] = 1;
        ++deg[a];
        ++deg[b];
        edges.emplace_back(std::min(a, b), std::max(a, b));
    };
    auto remove_at = [&](std::size_t pos) {
        auto [a, b] = edges[pos];
        adj[a * nv + b] = adj[b * nv + a] = 0;
        --deg[a];
        --deg[b];
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(pos));
    };

    std::optional<MulticoloredClique> clique;
    if (planted) {
        std::vector<std::size_t> pick(k);
        std::uniform_int_distribution<std::size_t> dist(1, n);
        for (std::size_t j = 0; j < k; ++j) pick[j] = dist(rng);
        clique = MulticoloredClique{pick};
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t h = j + 1; h < k; ++h) {
                const std::size_t a = j * n + (pick[j] - 1);
                const std::size_t b = h * n + (pick[h] - 1);
                add(a, b);
                protected_edges.insert({std::min(a, b), std::max(a, b)});
            }
    }

    // Regularize: connect deficient vertices, fall back to degree-preserving
    // edge swaps when the deficient set is locally saturated.
    const std::size_t max_rounds = 20000 * (nv + 1);
    for (std::size_t round = 0;; ++round) {
        std::vector<std::size_t> deficient;
        for (std::size_t v = 0; v < nv; ++v)
            if (deg[v] < d) deficient.push_back(v);
        if (deficient.empty()) break;
        if (round >= max_rounds)
            throw InstanceError("generator failed to reach a d-regular graph; parameters may be "
                                "near-infeasible");

        std::shuffle(deficient.begin(), deficient.end(), rng);
        const std::size_t x = deficient[0];
        const std::size_t y = deficient.size() > 1 ? deficient[1] : deficient[0];

        if (x != y && !adj[x * nv + y]) {
            add(x, y);
            continue;
        }
        if (edges.empty()) throw InstanceError("generator stuck with no edges to swap");
        std::uniform_int_distribution<std::size_t> epick(0, edges.size() - 1);
        bool swapped = false;
        for (std::size_t attempt = 0; attempt < 4 * edges.size() && !swapped; ++attempt) {
            const std::size_t pos = epick(rng);
            auto [u, v] = edges[pos];
            if (protected_edges.count({u, v})) continue;
            if (x == y) {
                // One vertex short by two: replace (u,v) by (x,u), (x,v).
                if (u == x || v == x || adj[x * nv + u] || adj[x * nv + v]) continue;
                remove_at(pos);
                add(x, u);
                add(x, v);
                swapped = true;
            } else {
                if (u == x || u == y || v == x || v == y) continue;
                if (adj[x * nv + u] || adj[y * nv + v]) continue;
                remove_at(pos);
                add(x, u);
                add(y, v);
                swapped = true;
            }
        }
        if (!swapped && round + 1 >= max_rounds)
            throw InstanceError("generator failed to find an admissible edge swap");
    }

    RmccGraph g{k, n, d, {}};
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) g.edges.emplace_back(vert(a), vert(b));
    return GeneratedRmcc{std::move(g), std::move(clique)};
}

}  // namespace circon
