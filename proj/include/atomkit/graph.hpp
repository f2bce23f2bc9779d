#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atomkit/error.hpp"
#include "atomkit/rng.hpp"

namespace atomkit {

/// Simple undirected graph on vertices 0..n-1 (no loops, at most 64 vertices).
class Graph {
  public:
    explicit Graph(std::size_t n = 0) : adj_(n, 0)
    {
        if (n > 64)
            throw ParameterError("graphs are limited to 64 vertices");
    }

    std::size_t vertex_count() const { return adj_.size(); }

    void add_edge(std::size_t u, std::size_t v)
    {
        if (u >= adj_.size() || v >= adj_.size())
            throw DomainError("edge {" + std::to_string(u) + "," + std::to_string(v)
                              + "} references a missing vertex");
        if (u == v)
            throw DomainError("loops are not allowed (vertex " + std::to_string(u) + ")");
        adj_[u] |= std::uint64_t{1} << v;
        adj_[v] |= std::uint64_t{1} << u;
    }

    bool adjacent(std::size_t u, std::size_t v) const { return adj_[u] >> v & 1; }
    std::uint64_t neighbours(std::size_t u) const { return adj_[u]; }
    std::size_t degree(std::size_t u) const { return std::size_t(std::popcount(adj_[u])); }

    std::size_t max_degree() const
    {
        std::size_t d = 0;
        for (std::size_t u = 0; u < adj_.size(); ++u)
            d = std::max(d, degree(u));
        return d;
    }

    /// Edges (u, v) with u < v, sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t u = 0; u < adj_.size(); ++u)
            for (std::size_t v = u + 1; v < adj_.size(); ++v)
                if (adjacent(u, v))
                    out.emplace_back(u, v);
        return out;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

  private:
    std::vector<std::uint64_t> adj_;
};

inline Graph complete_graph(std::size_t n)
{
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

inline Graph cycle_graph(std::size_t n)
{
    if (n < 3)
        throw ParameterError("cycles need at least 3 vertices");
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
        g.add_edge(u, (u + 1) % n);
    return g;
}

inline Graph petersen_graph()
{
    Graph g(10);
    for (std::size_t i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

/// G(n, p) drawn from the supplied generator.
inline Graph random_graph(std::size_t n, double p, Rng& rng)
{
    if (p < 0.0 || p > 1.0)
        throw ParameterError("edge probability must lie in [0, 1]");
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (uniform_unit(rng) < p)
                g.add_edge(u, v);
    return g;
}

inline bool is_proper_coloring(const Graph& g, const std::vector<std::size_t>& colour)
{
    if (colour.size() != g.vertex_count())
        return false;
    for (auto [u, v] : g.edges())
        if (colour[u] == colour[v])
            return false;
    return true;
}

struct ChromaticResult {
    std::size_t chi = 0;
    std::vector<std::size_t> coloring; ///< a proper chi-colouring
    std::vector<std::size_t> clique;   ///< clique used as the starting lower bound
    /// Search nodes spent proving that chi-1 colours do not suffice (0 when chi <= 1).
    std::uint64_t infeasibility_nodes = 0;
    bool infeasibility_exhaustive = false;
};

namespace detail {

/// Greedy clique from high-degree vertices.
inline std::vector<std::size_t> greedy_clique(const Graph& g)
{
    std::vector<std::size_t> order(g.vertex_count());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return g.degree(a) > g.degree(b); });
    std::vector<std::size_t> best;
    for (auto start : order) {
        std::vector<std::size_t> clique{start};
        for (auto v : order) {
            if (v == start)
                continue;
            bool all = std::all_of(clique.begin(), clique.end(),
                                   [&](auto c) { return g.adjacent(c, v); });
            if (all)
                clique.push_back(v);
        }
        if (clique.size() > best.size())
            best = clique;
    }
    std::sort(best.begin(), best.end());
    return best;
}

/**
 * Exhaustive k-colouring search. Vertices are coloured in a fixed
 * degree-descending order and a vertex may only open the next unused colour,
 * which removes colour-permutation symmetry without losing any colouring class.
 */
inline std::optional<std::vector<std::size_t>> try_color(const Graph& g, std::size_t k,
                                                         std::uint64_t& nodes)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return g.degree(a) > g.degree(b); });
    constexpr std::size_t none = ~std::size_t{0};
    std::vector<std::size_t> colour(n, none);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t used) -> bool {
        ++nodes;
        if (pos == n)
            return true;
        std::size_t v = order[pos];
        std::size_t limit = std::min(k, used + 1);
        for (std::size_t c = 0; c < limit; ++c) {
            bool ok = true;
            for (std::size_t u = 0; u < n && ok; ++u)
                if (g.adjacent(u, v) && colour[u] == c)
                    ok = false;
            if (!ok)
                continue;
            colour[v] = c;
            if (self(self, pos + 1, std::max(used, c + 1)))
                return true;
            colour[v] = none;
        }
        return false;
    };
    if (rec(rec, 0, 0))
        return colour;
    return std::nullopt;
}

} // namespace detail

/**
 * Exact chromatic number with a colouring witness and an exhaustive proof that
 * one colour fewer is impossible. Refuses graphs above `cap` vertices.
 */
inline ChromaticResult chromatic_number(const Graph& g, std::size_t cap = 16)
{
    if (g.vertex_count() > cap)
        throw CapError("graph has " + std::to_string(g.vertex_count())
                       + " vertices, above the exact-search cap of " + std::to_string(cap));
    ChromaticResult r;
    const std::size_t n = g.vertex_count();
    if (n == 0) {
        r.infeasibility_exhaustive = true;
        return r;
    }
    r.clique = detail::greedy_clique(g);
    std::uint64_t nodes = 0;
    for (std::size_t k = std::max<std::size_t>(1, r.clique.size()); k <= n; ++k) {
        if (auto c = detail::try_color(g, k, nodes)) {
            r.chi = k;
            r.coloring = std::move(*c);
            break;
        }
    }
    if (r.chi >= 2) {
        std::uint64_t proof = 0;
        auto below = detail::try_color(g, r.chi - 1, proof);
        r.infeasibility_nodes = proof;
        r.infeasibility_exhaustive = !below.has_value();
    } else {
        r.infeasibility_exhaustive = true; // zero colours never suffice for a non-empty graph
    }
    return r;
}

enum class GraphKind { complete, odd_cycle, random };

struct GraphSequenceParams {
    GraphKind kind = GraphKind::complete;
    std::vector<std::size_t> sizes;
    double p = 0.5;
    std::uint64_t seed = 0;
};

/// Deterministic family of graphs; random graphs share one generator seeded once.
inline std::vector<Graph> graph_sequence(const GraphSequenceParams& params)
{
    std::vector<Graph> out;
    Rng rng(params.seed);
    for (auto n : params.sizes) {
        switch (params.kind) {
        case GraphKind::complete:
            if (n == 0)
                throw ParameterError("complete graphs need at least one vertex");
            out.push_back(complete_graph(n));
            break;
        case GraphKind::odd_cycle:
            if (n < 3 || n % 2 == 0)
                throw ParameterError("odd cycles need an odd size >= 3, got " + std::to_string(n));
            out.push_back(cycle_graph(n));
            break;
        case GraphKind::random:
            out.push_back(random_graph(n, params.p, rng));
            break;
        }
    }
    return out;
}

enum class GraphClass { good, bad };

struct GraphClassification {
    GraphClass tag = GraphClass::bad;
    ChromaticResult chromatic;
};

/// Finite surrogate for the good/bad dichotomy: good iff chi >= threshold.
inline GraphClassification classify_graph(const Graph& g, std::size_t threshold, std::size_t cap = 16)
{
    GraphClassification c;
    c.chromatic = chromatic_number(g, cap);
    c.tag = c.chromatic.chi >= threshold ? GraphClass::good : GraphClass::bad;
    return c;
}

} // namespace atomkit
