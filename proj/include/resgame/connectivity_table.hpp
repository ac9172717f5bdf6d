// connectivity_table.hpp -- worst-case connectivity under an a-edge attack
// followed by the best d-edge recovery, for every (a, d), with witness sets.
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace resgame {

struct Witness {
    std::vector<Edge> attack;  // removed edge set, |attack| = a
    std::vector<Edge> recover; // restored subset of attack, |recover| = d
};

// Lower-triangular matrix T(a, d) = min over attack sets of size a of the
// max over recovery subsets of size d of the generalized connectivity of
// the surviving graph. Square storage, entries above the diagonal are
// padding and rejected by the accessor.
struct ConnectivityTable {
    Graph graph;
    std::vector<std::vector<int>> values;       // (E+1) x (E+1), padded with 0
    std::vector<std::vector<Witness>> witnesses; // valid cells only (d <= a)

    int edge_count() const { return graph.edge_count(); }
    int size() const { return graph.edge_count() + 1; }

    int value(int a, int d) const {
        if (a < 0 || a > edge_count() || d < 0 || d > edge_count())
            throw std::out_of_range("table index outside [0, |E|]");
        if (d > a)
            throw std::out_of_range("table entry (" + std::to_string(a) + ", " +
                                    std::to_string(d) + ") is padding: d > a");
        return values[a][d];
    }

    const Witness& witness(int a, int d) const {
        value(a, d); // bounds and padding check
        return witnesses[a][d];
    }

    int intact_lambda() const { return values[0][0]; }
};

namespace detail {

// Ascending-edge-index lists compare by first differing element; the mask
// containing the lowest differing bit is the smaller list.
inline bool lex_less(std::uint32_t a, std::uint32_t b) {
    std::uint32_t d = a ^ b;
    if (d == 0) return false;
    return a & (d & ~(d - 1));
}

inline std::vector<Edge> mask_to_edges(const Graph& g, std::uint32_t mask) {
    std::vector<Edge> out;
    for (int i = 0; i < g.edge_count(); ++i)
        if (mask >> i & 1u) out.push_back(g.edges[i]);
    return out;
}

} // namespace detail

// Exhaustive construction; cost grows as 3^|E|, so refuse beyond max_edges.
inline ConnectivityTable build_table(const Graph& g, int max_edges = 20) {
    if (connected_components(g) != 1)
        throw DisconnectedInput("base topology must be connected");
    const int E = g.edge_count();
    if (E > max_edges)
        throw TooLarge("build_table enumerates 3^|E| subset pairs; |E| = " +
                       std::to_string(E) + " exceeds the guard " +
                       std::to_string(max_edges));

    const auto cross = detail::crossing_masks(g);
    const std::uint32_t full = E == 0 ? 0u : (std::uint32_t{1} << E) - 1;

    // generalized connectivity of every survivable edge set
    std::vector<std::int8_t> lam(std::size_t{1} << E);
    for (std::uint32_t m = 0; m <= full; ++m) {
        lam[m] = static_cast<std::int8_t>(detail::generalized_lambda_under(g, m, cross));
        if (full == 0) break;
    }

    struct Cell {
        int value = std::numeric_limits<int>::max();
        std::uint32_t attack = 0, recover = 0;
    };
    std::vector<std::vector<Cell>> cells(E + 1);
    for (int a = 0; a <= E; ++a) cells[a].resize(a + 1);

    std::array<int, 21> best_val{};
    std::array<std::uint32_t, 21> best_rec{};
    for (std::uint32_t atk = 0; atk <= full; ++atk) {
        const int a = std::popcount(atk);
        for (int d = 0; d <= a; ++d) best_val[d] = std::numeric_limits<int>::min();
        const std::uint32_t base = full ^ atk;
        // max over recovery subsets, bucketed by size
        std::uint32_t rec = atk;
        while (true) {
            const int d = std::popcount(rec);
            const int v = lam[base | rec];
            if (v > best_val[d] ||
                (v == best_val[d] && detail::lex_less(rec, best_rec[d]))) {
                best_val[d] = v;
                best_rec[d] = rec;
            }
            if (rec == 0) break;
            rec = (rec - 1) & atk;
        }
        // min over attack sets of the per-size maxima
        for (int d = 0; d <= a; ++d) {
            Cell& c = cells[a][d];
            if (best_val[d] < c.value ||
                (best_val[d] == c.value && detail::lex_less(atk, c.attack))) {
                c.value = best_val[d];
                c.attack = atk;
                c.recover = best_rec[d];
            }
        }
        if (full == 0) break;
    }

    ConnectivityTable t;
    t.graph = g;
    t.values.assign(E + 1, std::vector<int>(E + 1, 0));
    t.witnesses.assign(E + 1, {});
    for (int a = 0; a <= E; ++a) {
        t.witnesses[a].resize(a + 1);
        for (int d = 0; d <= a; ++d) {
            t.values[a][d] = cells[a][d].value;
            t.witnesses[a][d] = Witness{detail::mask_to_edges(g, cells[a][d].attack),
                                        detail::mask_to_edges(g, cells[a][d].recover)};
        }
    }
    return t;
}

// Edges the defender must restore to lift a disconnected graph at level
// `attacked` (< 0) up to `target`: the difference of component surpluses,
// or just enough to reconnect when the target is any connected level.
inline int min_edges_to_reconnect(int attacked, int target) {
    if (attacked >= 0)
        throw ValidationError("source level must be disconnected (negative)");
    if (target < attacked)
        throw InvalidTarget("target below the attacked connectivity level");
    if (target < 0) return target - attacked;
    return -attacked;
}

// Square CSV with one header row of recovery sizes and one row per attack size.
inline void write_table_csv(const ConnectivityTable& t, std::ostream& os) {
    os << "m_A";
    for (int d = 0; d < t.size(); ++d) os << ',' << d;
    os << '\n';
    for (int a = 0; a < t.size(); ++a) {
        os << a;
        for (int d = 0; d < t.size(); ++d) os << ',' << t.values[a][d];
        os << '\n';
    }
}

} // namespace resgame
