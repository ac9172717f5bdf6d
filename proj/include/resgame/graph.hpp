// graph.hpp -- undirected simple graphs, connectivity and the generalized
// edge-connectivity measure (edge connectivity if connected, otherwise
// minus the number of extra components).
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace resgame {

// Edge as a canonical (min, max) vertex pair.
using Edge = std::pair<int, int>;

struct Graph {
    int n = 0;
    std::vector<Edge> edges; // canonical and sorted, no duplicates

    // Validates, canonicalizes and sorts the edge list.
    static Graph make(int n, std::vector<Edge> edges) {
        if (n < 1)
            throw ValidationError("graph needs at least one vertex");
        for (auto& [u, v] : edges) {
            if (u == v)
                throw ValidationError("self-loop on vertex " + std::to_string(u));
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw ValidationError("edge endpoint out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw ValidationError("duplicate edge");
        return Graph{n, std::move(edges)};
    }

    int edge_count() const { return static_cast<int>(edges.size()); }

    // Index of a canonical edge in the sorted list, -1 if absent.
    int edge_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges.begin(), edges.end(), Edge{u, v});
        if (it == edges.end() || *it != Edge{u, v}) return -1;
        return static_cast<int>(it - edges.begin());
    }
};

inline Graph make_path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Graph::make(n, std::move(e));
}

inline Graph make_complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
    return Graph::make(n, std::move(e));
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

// Component count of the subgraph on all n vertices induced by the edges
// whose bits are set in active.
inline int components_under(const Graph& g, std::uint32_t active) {
    UnionFind uf(g.n);
    int c = g.n;
    for (int i = 0; i < g.edge_count(); ++i)
        if (active >> i & 1u)
            if (uf.unite(g.edges[i].first, g.edges[i].second)) --c;
    return c;
}

// For every proper vertex set S containing vertex 0, the bitmask of edges
// crossing the (S, V\S) cut. Index is the subset of {1..n-1} kept with 0.
inline std::vector<std::uint32_t> crossing_masks(const Graph& g) {
    const int rest = g.n - 1;
    std::vector<std::uint32_t> cross(std::size_t{1} << rest, 0);
    for (std::uint32_t s = 0; s < cross.size(); ++s) {
        std::uint32_t m = 0;
        for (int i = 0; i < g.edge_count(); ++i) {
            auto [u, v] = g.edges[i];
            bool in_u = u == 0 || (s >> (u - 1) & 1u);
            bool in_v = v == 0 || (s >> (v - 1) & 1u);
            if (in_u != in_v) m |= 1u << i;
        }
        cross[s] = m;
    }
    return cross;
}

// Generalized edge connectivity of the active-edge subgraph, using
// precomputed crossing masks. cross excludes the full set (s covers
// proper subsets only when the caller skips s == all).
inline int generalized_lambda_under(const Graph& g, std::uint32_t active,
                                    const std::vector<std::uint32_t>& cross) {
    int c = components_under(g, active);
    if (c > 1) return -(c - 1);
    if (g.n == 1) return 0;
    int best = g.edge_count() + 1;
    const std::uint32_t all = static_cast<std::uint32_t>(cross.size()) - 1;
    for (std::uint32_t s = 0; s < all; ++s) // s == all would be S = V
        best = std::min(best, std::popcount(active & cross[s]));
    return best;
}

} // namespace detail

inline int connected_components(const Graph& g) {
    std::uint32_t all = g.edge_count() >= 32 ? ~0u
                        : (std::uint32_t{1} << g.edge_count()) - 1;
    if (g.edge_count() >= 32) {
        // no bitmask shortcut for big graphs; plain union-find
        detail::UnionFind uf(g.n);
        int c = g.n;
        for (auto [u, v] : g.edges)
            if (uf.unite(u, v)) --c;
        return c;
    }
    return detail::components_under(g, all);
}

// Edge connectivity via the global minimum cut over vertex bipartitions.
// Only defined for connected graphs; n == 1 gives 0.
inline int edge_connectivity(const Graph& g) {
    if (connected_components(g) != 1)
        throw DisconnectedInput("edge_connectivity needs a connected graph");
    if (g.n == 1) return 0;
    if (g.n > 25)
        throw TooLarge("edge_connectivity enumerates 2^(n-1) cuts; n > 25 refused");
    int best = g.edge_count();
    const std::uint64_t lim = std::uint64_t{1} << (g.n - 1);
    for (std::uint64_t s = 0; s + 1 < lim; ++s) {
        int cut = 0;
        for (auto [u, v] : g.edges) {
            bool in_u = u == 0 || (s >> (u - 1) & 1u);
            bool in_v = v == 0 || (s >> (v - 1) & 1u);
            cut += in_u != in_v;
        }
        best = std::min(best, cut);
    }
    return best;
}

// Edge connectivity when connected, otherwise -(components - 1).
inline int generalized_lambda(const Graph& g) {
    int c = connected_components(g);
    if (c > 1) return -(c - 1);
    return edge_connectivity(g);
}

} // namespace resgame
