// Reference implementations used only by tests. Deliberately naive and independent of
// the library's solver code paths.
#ifndef SHANNON_TESTS_ORACLES_HPP
#define SHANNON_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "shannon/graph.hpp"

namespace oracle {

using shannon::Graph;

inline std::vector<std::vector<bool>> matrix(const Graph& g) {
    std::vector<std::vector<bool>> m(g.order(), std::vector<bool>(g.order(), false));
    for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = true;
    return m;
}

/// α by exhaustive branching on the lowest remaining vertex (n ≤ 64).
inline std::size_t alpha(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<std::uint64_t> closed(n);
    for (std::size_t v = 0; v < n; ++v) {
        closed[v] = std::uint64_t{1} << v;
        for (std::size_t u = 0; u < n; ++u)
            if (g.adjacent(u, v)) closed[v] |= std::uint64_t{1} << u;
    }
    std::function<std::size_t(std::uint64_t)> rec = [&](std::uint64_t mask) -> std::size_t {
        if (!mask) return 0;
        const int v = __builtin_ctzll(mask);
        const std::size_t take = 1 + rec(mask & ~closed[v]);
        if (take > static_cast<std::size_t>(__builtin_popcountll(mask & ~(std::uint64_t{1} << v)))) return take;
        return std::max(take, rec(mask & ~(std::uint64_t{1} << v)));
    };
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    return rec(all);
}

/// Smallest k such that the complement is k-colourable (n ≤ 12).
inline std::size_t clique_cover(const Graph& g) {
    const auto m = matrix(g);
    const std::size_t n = g.order();
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<int> col(n, -1);
        std::function<bool(std::size_t)> go = [&](std::size_t v) -> bool {
            if (v == n) return true;
            for (int c = 0; c < static_cast<int>(k); ++c) {
                bool ok = true;
                for (std::size_t u = 0; u < v && ok; ++u)
                    if (col[u] == c && !m[u][v]) ok = false;  // same colour needs an edge of g
                if (!ok) continue;
                col[v] = c;
                if (go(v + 1)) return true;
            }
            col[v] = -1;
            return false;
        };
        if (go(0)) return k;
    }
    return n;
}

/// ω by checking all subsets (n ≤ 16).
inline std::size_t omega(const Graph& g) {
    const std::size_t n = g.order();
    std::size_t best = 0;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        const auto k = static_cast<std::size_t>(__builtin_popcount(s));
        if (k <= best) continue;
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = a + 1; b < n && ok; ++b)
                if ((s >> a & 1) && (s >> b & 1) && !g.adjacent(a, b)) ok = false;
        if (ok) best = k;
    }
    return best;
}

/// Plain graph6 writer built from an explicit upper-triangle bit string.
inline std::string graph6(const Graph& g) {
    const std::size_t n = g.order();
    std::string out;
    if (n < 63) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
    std::vector<bool> bits;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) bits.push_back(g.adjacent(i, j));
    while (bits.size() % 6) bits.push_back(false);
    for (std::size_t k = 0; k < bits.size(); k += 6) {
        int x = 0;
        for (std::size_t b = 0; b < 6; ++b) x = (x << 1) | (bits[k + b] ? 1 : 0);
        out.push_back(static_cast<char>(x + 63));
    }
    return out;
}

/// Exact isomorphism test by backtracking with degree refinement (n ≤ 12).
inline bool isomorphic(const Graph& a, const Graph& b) {
    const std::size_t n = a.order();
    if (n != b.order() || a.edge_count() != b.edge_count()) return false;
    std::vector<std::size_t> da(n), db(n);
    for (std::size_t v = 0; v < n; ++v) {
        da[v] = a.degree(v);
        db[v] = b.degree(v);
    }
    {
        auto sa = da, sb = db;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> go = [&](std::size_t v) -> bool {
        if (v == n) return true;
        for (std::size_t w = 0; w < n; ++w) {
            if (used[w] || da[v] != db[w]) continue;
            bool ok = true;
            for (std::size_t u = 0; u < v && ok; ++u)
                if (a.adjacent(u, v) != b.adjacent(static_cast<std::size_t>(map[u]), w)) ok = false;
            if (!ok) continue;
            map[v] = static_cast<int>(w);
            used[w] = true;
            if (go(v + 1)) return true;
            used[w] = false;
        }
        map[v] = -1;
        return false;
    };
    return go(0);
}

/// Erdős–Rényi graph with edge probability q.
inline Graph random_graph(std::size_t n, double q, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(q);
    std::vector<shannon::Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

/// Random bipartite graph: each vertex gets a random side, cross edges with probability q.
inline Graph random_bipartite(std::size_t n, double q, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(q), side(0.5);
    std::vector<bool> s(n);
    for (std::size_t v = 0; v < n; ++v) s[v] = side(rng);
    std::vector<shannon::Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (s[u] != s[v] && coin(rng)) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

}  // namespace oracle

#endif  // SHANNON_TESTS_ORACLES_HPP
