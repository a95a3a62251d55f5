#ifndef SHANNON_SOLVERS_HPP
#define SHANNON_SOLVERS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "shannon/bitset.hpp"
#include "shannon/graph.hpp"

namespace shannon {

enum class VertexOrdering { degree, degeneracy, label };

struct SolverConfig {
    double time_budget = 60.0;  // seconds
    std::uint64_t node_budget = 2'000'000'000;
    std::uint64_t seed = 1;
    VertexOrdering ordering = VertexOrdering::degree;
    unsigned threads = 1;
    std::size_t heuristic_iterations = 2000;

    void validate() const {
        if (!(time_budget > 0.0)) throw Error("solver time budget must be positive");
        if (node_budget == 0) throw Error("solver node budget must be positive");
        if (threads == 0) throw Error("solver thread count must be positive");
    }
};

struct IndependentSet {
    std::vector<std::size_t> vertices;  // sorted
    bool proven_optimal = false;
    std::size_t upper_bound = 0;
    std::uint64_t nodes = 0;

    std::size_t size() const noexcept { return vertices.size(); }
};

struct CliqueCover {
    std::vector<std::vector<std::size_t>> parts;
};

/// True iff parts partition V(g) into cliques.
inline bool is_valid_clique_cover(const Graph& g, const CliqueCover& cover) {
    std::vector<bool> seen(g.order(), false);
    for (const auto& part : cover.parts) {
        if (part.empty() || !g.is_clique(part)) return false;
        for (auto v : part) {
            if (seen[v]) return false;
            seen[v] = true;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

namespace detail {

class Deadline {
public:
    explicit Deadline(double seconds)
        : end_(std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(std::min(seconds, 1e9)))) {}
    bool passed() const { return std::chrono::steady_clock::now() >= end_; }

private:
    std::chrono::steady_clock::time_point end_;
};

inline std::vector<std::size_t> vertex_order(const Graph& g, VertexOrdering ordering) {
    const std::size_t n = g.order();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    switch (ordering) {
        case VertexOrdering::label:
            break;
        case VertexOrdering::degree: {
            std::vector<std::size_t> deg(n);
            for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return deg[a] < deg[b]; });
            break;
        }
        case VertexOrdering::degeneracy: {
            // Repeatedly move the remaining vertex with most conflicts to the back.
            Bitset alive = Bitset::full(n);
            std::vector<std::size_t> deg(n);
            for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);
            for (std::size_t pos = n; pos-- > 0;) {
                std::size_t best = n;
                for (std::size_t v = alive.first(); v < n; v = alive.next(v + 1))
                    if (best == n || deg[v] > deg[best]) best = v;
                order[pos] = best;
                alive.reset(best);
                const Bitset& nb = g.neighbors(best);
                for (std::size_t u = nb.first(); u < n; u = nb.next(u + 1))
                    if (alive.test(u)) --deg[u];
            }
            break;
        }
    }
    return order;
}

/// Bit-parallel branch and bound for maximum independent sets. Bound: greedy
/// partition of the candidate set into cliques of G, classes numbered in order.
class MisSearch {
public:
    MisSearch(const Graph& g, const SolverConfig& cfg, std::vector<std::size_t> order)
        : n_(g.order()), cfg_(cfg), order_(std::move(order)), rows_(n_, Bitset(n_)), deadline_(cfg.time_budget) {
        std::vector<std::size_t> pos(n_);
        for (std::size_t i = 0; i < n_; ++i) pos[order_[i]] = i;
        for (std::size_t i = 0; i < n_; ++i) {
            const Bitset& nb = g.neighbors(order_[i]);
            for (std::size_t u = nb.first(); u < n_; u = nb.next(u + 1)) rows_[i].set(pos[u]);
        }
    }

    /// base: vertices already committed (in original ids). candidates: original ids allowed.
    /// root_orbit: optional orbit id per original vertex; at the root only the first vertex
    /// of each orbit is branched on.
    IndependentSet run(const std::vector<std::size_t>& base, const Bitset& candidates,
                       std::vector<std::size_t> incumbent, const std::vector<int>* root_orbit = nullptr) {
        std::vector<std::size_t> pos(n_);
        for (std::size_t i = 0; i < n_; ++i) pos[order_[i]] = i;
        Bitset root(n_);
        for (std::size_t v = candidates.first(); v < n_; v = candidates.next(v + 1)) root.set(pos[v]);

        best_size_.store(incumbent.size());
        best_ = incumbent;
        base_ = base;

        std::vector<std::size_t> list;
        std::vector<std::size_t> color;
        cover(root, 1, list, color);

        struct RootBranch {
            std::size_t vertex;
            std::size_t bound;
            Bitset candidates;
        };
        std::vector<RootBranch> branches;
        {
            Bitset remaining = root;
            std::vector<int> seen_orbits;
            for (std::size_t idx = list.size(); idx-- > 0;) {
                const std::size_t v = list[idx];
                bool skip = false;
                if (root_orbit) {
                    const int orb = (*root_orbit)[order_[v]];
                    if (std::find(seen_orbits.begin(), seen_orbits.end(), orb) != seen_orbits.end())
                        skip = true;
                    else
                        seen_orbits.push_back(orb);
                }
                remaining.reset(v);
                if (skip) continue;
                Bitset child = remaining;
                child.subtract(rows_[v]);
                branches.push_back({v, base.size() + color[idx], std::move(child)});
            }
        }

        std::vector<std::uint8_t> done(branches.size(), 0);
        std::atomic<std::size_t> next{0};
        auto worker = [&](unsigned) {
            std::vector<std::size_t> current = base_;
            while (true) {
                const std::size_t j = next.fetch_add(1);
                if (j >= branches.size() || aborted_.load()) return;
                auto& br = branches[j];
                if (br.bound <= best_size_.load()) {
                    done[j] = 1;
                    continue;
                }
                current.push_back(order_[br.vertex]);
                expand(current, br.candidates);
                current.pop_back();
                if (!aborted_.load()) done[j] = 1;
            }
        };
        const unsigned threads = std::max(1u, cfg_.threads);
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        }

        IndependentSet out;
        out.vertices = best_;
        std::sort(out.vertices.begin(), out.vertices.end());
        out.nodes = nodes_.load();
        out.proven_optimal = !aborted_.load();
        std::size_t ub = out.vertices.size();
        if (aborted_.load()) {
            for (std::size_t j = 0; j < branches.size(); ++j)
                if (!done[j]) ub = std::max(ub, branches[j].bound);
        }
        out.upper_bound = ub;
        return out;
    }

private:
    // Greedy clique partition of p. Vertices whose class index is below kmin are
    // not recorded since they cannot lead to an improvement.
    void cover(const Bitset& p, std::size_t kmin, std::vector<std::size_t>& list,
               std::vector<std::size_t>& color) const {
        list.clear();
        color.clear();
        Bitset q = p;
        std::size_t k = 0;
        while (q.any()) {
            ++k;
            Bitset u = q;
            for (std::size_t v = u.first(); v < n_; v = u.next(v + 1)) {
                q.reset(v);
                u &= rows_[v];
                if (k >= kmin) {
                    list.push_back(v);
                    color.push_back(k);
                }
            }
        }
    }

    void expand(std::vector<std::size_t>& current, Bitset p) {
        if (aborted_.load(std::memory_order_relaxed)) return;
        const auto count = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if ((count & 1023) == 0 && (count >= cfg_.node_budget || deadline_.passed())) {
            aborted_.store(true);
            return;
        }
        if (p.none()) {
            publish(current);
            return;
        }
        const std::size_t best = best_size_.load(std::memory_order_relaxed);
        const std::size_t kmin = best >= current.size() ? best - current.size() + 1 : 1;
        std::vector<std::size_t> list;
        std::vector<std::size_t> color;
        cover(p, kmin, list, color);
        for (std::size_t idx = list.size(); idx-- > 0;) {
            if (current.size() + color[idx] <= best_size_.load(std::memory_order_relaxed)) return;
            const std::size_t v = list[idx];
            Bitset child = p;
            child.subtract(rows_[v]);
            child.reset(v);
            current.push_back(order_[v]);
            expand(current, std::move(child));
            current.pop_back();
            if (aborted_.load(std::memory_order_relaxed)) return;
            p.reset(v);
        }
    }

    void publish(const std::vector<std::size_t>& current) {
        std::lock_guard lock(mutex_);
        if (current.size() > best_.size()) {
            best_ = current;
            best_size_.store(current.size());
        }
    }

    std::size_t n_;
    SolverConfig cfg_;
    std::vector<std::size_t> order_;
    std::vector<Bitset> rows_;
    Deadline deadline_;
    std::vector<std::size_t> base_;
    std::vector<std::size_t> best_;
    std::atomic<std::size_t> best_size_{0};
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> aborted_{false};
    std::mutex mutex_;
};

}  // namespace detail

/// Randomized greedy construction followed by iterated (1,2)-swap local search.
/// Deterministic for a fixed seed.
inline IndependentSet heuristic_independent_set(const Graph& g, const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t n = g.order();
    std::mt19937_64 rng(cfg.seed);

    std::vector<std::uint8_t> in(n, 0);
    std::vector<std::size_t> tight(n, 0);  // |N(v) ∩ S|
    std::size_t size = 0;

    auto insert = [&](std::size_t v) {
        in[v] = 1;
        ++size;
        const Bitset& nb = g.neighbors(v);
        for (std::size_t u = nb.first(); u < n; u = nb.next(u + 1)) ++tight[u];
    };
    auto remove = [&](std::size_t v) {
        in[v] = 0;
        --size;
        const Bitset& nb = g.neighbors(v);
        for (std::size_t u = nb.first(); u < n; u = nb.next(u + 1)) --tight[u];
    };

    // Greedy: repeatedly take a free vertex of minimum residual degree, random ties.
    {
        Bitset alive = Bitset::full(n);
        std::vector<std::size_t> deg(n);
        for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);
        std::vector<std::size_t> ties;
        while (alive.any()) {
            std::size_t mind = std::numeric_limits<std::size_t>::max();
            ties.clear();
            for (std::size_t v = alive.first(); v < n; v = alive.next(v + 1)) {
                if (deg[v] < mind) {
                    mind = deg[v];
                    ties.clear();
                }
                if (deg[v] == mind) ties.push_back(v);
            }
            const std::size_t v = ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(rng)];
            insert(v);
            Bitset gone = g.neighbors(v);
            gone.set(v);
            gone &= alive;
            alive.subtract(gone);
            for (std::size_t u = gone.first(); u < n; u = gone.next(u + 1)) {
                const Bitset& nb = g.neighbors(u);
                for (std::size_t w = nb.first(); w < n; w = nb.next(w + 1))
                    if (alive.test(w)) --deg[w];
            }
        }
    }

    auto add_free = [&](std::vector<std::size_t> pool) {
        std::shuffle(pool.begin(), pool.end(), rng);
        for (auto v : pool)
            if (!in[v] && tight[v] == 0) insert(v);
    };

    // One pass of (1,2)-swaps: drop x ∈ S, add two non-adjacent 1-tight neighbours of x.
    auto two_swap = [&]() {
        bool improved = true;
        while (improved) {
            improved = false;
            std::vector<std::size_t> sol;
            for (std::size_t v = 0; v < n; ++v)
                if (in[v]) sol.push_back(v);
            std::shuffle(sol.begin(), sol.end(), rng);
            for (auto x : sol) {
                if (!in[x]) continue;
                std::vector<std::size_t> cands;
                const Bitset& nb = g.neighbors(x);
                for (std::size_t u = nb.first(); u < n; u = nb.next(u + 1))
                    if (!in[u] && tight[u] == 1) cands.push_back(u);
                bool done = false;
                for (std::size_t a = 0; a < cands.size() && !done; ++a)
                    for (std::size_t b = a + 1; b < cands.size() && !done; ++b)
                        if (!g.adjacent(cands[a], cands[b])) {
                            remove(x);
                            insert(cands[a]);
                            insert(cands[b]);
                            add_free(cands);
                            done = true;
                        }
                if (done) improved = true;
            }
        }
    };

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    two_swap();
    std::vector<std::uint8_t> best_in = in;
    std::size_t best_size = size;

    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t it = 0; it < cfg.heuristic_iterations && best_size < n; ++it) {
        // Perturb: force a random outside vertex in, evicting its neighbours.
        std::size_t v = pick(rng);
        for (std::size_t tries = 0; in[v] && tries < n; ++tries) v = (v + 1) % n;
        if (in[v]) break;
        const Bitset& nb = g.neighbors(v);
        std::vector<std::size_t> evicted;
        for (std::size_t u = nb.first(); u < n; u = nb.next(u + 1))
            if (in[u]) {
                remove(u);
                evicted.push_back(u);
            }
        insert(v);
        std::vector<std::size_t> around;
        for (auto u : evicted) {
            const Bitset& nu = g.neighbors(u);
            for (std::size_t w = nu.first(); w < n; w = nu.next(w + 1)) around.push_back(w);
        }
        add_free(around);
        two_swap();
        if (size > best_size) {
            best_size = size;
            best_in = in;
        } else if (size + 1 < best_size) {
            // drifted too far: restart from the best solution
            for (std::size_t u = 0; u < n; ++u)
                if (in[u]) remove(u);
            for (std::size_t u = 0; u < n; ++u)
                if (best_in[u]) insert(u);
        }
    }

    IndependentSet out;
    for (std::size_t v = 0; v < n; ++v)
        if (best_in[v]) out.vertices.push_back(v);
    out.proven_optimal = out.vertices.size() == n;
    out.upper_bound = n;
    return out;
}

namespace detail {

/// Size of a greedy clique partition of `candidates`, an upper bound on α restricted to it.
inline std::size_t greedy_cover_bound(const Graph& g, const Bitset& candidates) {
    const std::size_t n = g.order();
    Bitset q = candidates;
    std::size_t k = 0;
    while (q.any()) {
        ++k;
        Bitset u = q;
        for (std::size_t v = u.first(); v < n; v = u.next(v + 1)) {
            q.reset(v);
            u &= g.neighbors(v);
        }
    }
    return k;
}

}  // namespace detail

/// Exact maximum independent set within budget. On budget exhaustion the best
/// incumbent is returned with proven_optimal = false and a valid upper bound.
inline IndependentSet max_independent_set(const Graph& g, const SolverConfig& cfg) {
    cfg.validate();
    SolverConfig hcfg = cfg;
    hcfg.heuristic_iterations = std::min<std::size_t>(cfg.heuristic_iterations, 50 * g.order());
    IndependentSet seed = heuristic_independent_set(g, hcfg);
    detail::MisSearch search(g, cfg, detail::vertex_order(g, cfg.ordering));
    auto result = search.run({}, Bitset::full(g.order()), seed.vertices);
    if (!result.proven_optimal) {
        const std::size_t cover = detail::greedy_cover_bound(g, Bitset::full(g.order()));
        result.upper_bound = std::min(result.upper_bound, cover);
        result.upper_bound = std::max(result.upper_bound, result.size());
        if (result.upper_bound == result.size()) result.proven_optimal = true;
    }
    return result;
}

/// Maximum independent set containing `forced` (assumed independent), with optional
/// root-level orbit pruning. Used by symmetry-aware callers.
inline IndependentSet max_independent_set_containing(const Graph& g, const std::vector<std::size_t>& forced,
                                                     const SolverConfig& cfg,
                                                     const std::vector<int>* root_orbit = nullptr) {
    cfg.validate();
    if (!g.is_independent(forced)) throw Error("forced vertices are not independent");
    Bitset cand = Bitset::full(g.order());
    for (auto v : forced) {
        cand.subtract(g.neighbors(v));
        cand.reset(v);
    }
    // Seed from the heuristic on the residual graph.
    std::vector<std::size_t> incumbent = forced;
    const auto residual_ids = cand.indices();
    if (!residual_ids.empty()) {
        SolverConfig hcfg = cfg;
        hcfg.heuristic_iterations = std::min<std::size_t>(cfg.heuristic_iterations, 50 * residual_ids.size());
        auto h = heuristic_independent_set(induced_subgraph(g, residual_ids), hcfg);
        for (auto v : h.vertices) incumbent.push_back(residual_ids[v]);
    }
    detail::MisSearch search(g, cfg, detail::vertex_order(g, cfg.ordering));
    auto result = search.run(forced, cand, incumbent, root_orbit);
    if (!result.proven_optimal) {
        const std::size_t cover = forced.size() + detail::greedy_cover_bound(g, cand);
        result.upper_bound = std::max(std::min(result.upper_bound, cover), result.size());
        if (result.upper_bound == result.size()) result.proven_optimal = true;
    }
    return result;
}

struct CliqueResult {
    std::vector<std::size_t> clique;
    bool proven_optimal = false;
    std::size_t upper_bound = 0;

    std::size_t size() const noexcept { return clique.size(); }
};

/// ω(G) = α(complement(G)).
inline CliqueResult max_clique(const Graph& g, const SolverConfig& cfg) {
    auto r = max_independent_set(complement(g), cfg);
    return {std::move(r.vertices), r.proven_optimal, r.upper_bound};
}

inline std::size_t clique_number(const Graph& g, const SolverConfig& cfg) { return max_clique(g, cfg).size(); }

inline constexpr std::size_t kDefaultCliqueCap = 2000;

/// Every maximal clique exactly once (Bron–Kerbosch with Tomita pivoting).
/// Each clique is sorted; cliques come in discovery order.
inline std::vector<std::vector<std::size_t>> enumerate_maximal_cliques(const Graph& g,
                                                                       std::size_t cap = kDefaultCliqueCap) {
    const std::size_t n = g.order();
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> r;
    auto rec = [&](auto&& self, Bitset p, Bitset x) -> void {
        if (p.none() && x.none()) {
            if (out.size() >= cap)
                throw LimitError("more than " + std::to_string(cap) +
                                 " maximal cliques; use the edge-constraint fallback instead");
            auto c = r;
            std::sort(c.begin(), c.end());
            out.push_back(std::move(c));
            return;
        }
        // pivot maximizing |P ∩ N(u)|
        std::size_t pivot = n;
        std::size_t best = 0;
        Bitset px = p | x;
        for (std::size_t u = px.first(); u < n; u = px.next(u + 1)) {
            const std::size_t c = (p & g.neighbors(u)).count();
            if (pivot == n || c > best) {
                pivot = u;
                best = c;
            }
        }
        Bitset ext = p;
        ext.subtract(g.neighbors(pivot));
        for (std::size_t v = ext.first(); v < n; v = ext.next(v + 1)) {
            r.push_back(v);
            self(self, p & g.neighbors(v), x & g.neighbors(v));
            r.pop_back();
            p.reset(v);
            x.set(v);
        }
    };
    rec(rec, Bitset::full(n), Bitset(n));
    return out;
}

struct CliqueCoverResult {
    std::size_t value = 0;
    CliqueCover cover;
    bool proven_optimal = false;
    std::size_t lower_bound = 0;
};

namespace detail {

/// DSATUR greedy colouring of h; returns colour per vertex.
inline std::vector<int> dsatur_greedy(const Graph& h) {
    const std::size_t n = h.order();
    std::vector<int> col(n, -1);
    std::vector<Bitset> sat(n, Bitset(n + 1));
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (col[v] >= 0) continue;
            if (best == n) {
                best = v;
                continue;
            }
            const auto sv = sat[v].count();
            const auto sb = sat[best].count();
            if (sv > sb || (sv == sb && h.degree(v) > h.degree(best))) best = v;
        }
        int c = 0;
        while (sat[best].test(static_cast<std::size_t>(c))) ++c;
        col[best] = c;
        const Bitset& nb = h.neighbors(best);
        for (std::size_t u = nb.first(); u < n; u = nb.next(u + 1)) sat[u].set(static_cast<std::size_t>(c));
    }
    return col;
}

/// Backtracking k-colouring of h with DSATUR branching and a precoloured clique.
class ColoringSearch {
public:
    ColoringSearch(const Graph& h, std::size_t k, const std::vector<std::size_t>& clique, const SolverConfig& cfg,
                   const Deadline& deadline, std::uint64_t& nodes)
        : h_(h), k_(k), cfg_(cfg), deadline_(deadline), nodes_(nodes), col_(h.order(), -1),
          forbidden_(h.order(), std::vector<int>(k, 0)) {
        for (std::size_t i = 0; i < clique.size(); ++i) assign(clique[i], static_cast<int>(i));
    }

    /// nullopt: budget exhausted; empty vector: not k-colourable.
    std::optional<std::vector<int>> solve() {
        if (search()) return col_;
        if (aborted_) return std::nullopt;
        return std::vector<int>{};
    }

private:
    void assign(std::size_t v, int c) {
        col_[v] = c;
        const Bitset& nb = h_.neighbors(v);
        for (std::size_t u = nb.first(); u < h_.order(); u = nb.next(u + 1)) ++forbidden_[u][c];
    }
    void unassign(std::size_t v) {
        const int c = col_[v];
        col_[v] = -1;
        const Bitset& nb = h_.neighbors(v);
        for (std::size_t u = nb.first(); u < h_.order(); u = nb.next(u + 1)) --forbidden_[u][c];
    }

    bool search() {
        if ((++nodes_ & 1023) == 0 && (nodes_ >= cfg_.node_budget || deadline_.passed())) aborted_ = true;
        if (aborted_) return false;
        std::size_t best = h_.order();
        std::size_t best_sat = 0;
        int max_used = -1;
        for (std::size_t v = 0; v < h_.order(); ++v) max_used = std::max(max_used, col_[v]);
        for (std::size_t v = 0; v < h_.order(); ++v) {
            if (col_[v] >= 0) continue;
            std::size_t s = 0;
            for (std::size_t c = 0; c < k_; ++c) s += forbidden_[v][c] > 0;
            if (s == k_) return false;
            if (best == h_.order() || s > best_sat) {
                best = v;
                best_sat = s;
            }
        }
        if (best == h_.order()) return true;
        // Colours above max_used+1 are interchangeable; try only the first unused one.
        const int limit = std::min(static_cast<int>(k_) - 1, max_used + 1);
        for (int c = 0; c <= limit; ++c) {
            if (forbidden_[best][c]) continue;
            assign(best, c);
            if (search()) return true;
            unassign(best);
            if (aborted_) return false;
        }
        return false;
    }

    const Graph& h_;
    std::size_t k_;
    const SolverConfig& cfg_;
    const Deadline& deadline_;
    std::uint64_t& nodes_;
    std::vector<int> col_;
    std::vector<std::vector<int>> forbidden_;
    bool aborted_ = false;
};

inline CliqueCover cover_from_colouring(const std::vector<int>& col) {
    CliqueCover cover;
    int k = 0;
    for (int c : col) k = std::max(k, c + 1);
    cover.parts.resize(static_cast<std::size_t>(k));
    for (std::size_t v = 0; v < col.size(); ++v) cover.parts[static_cast<std::size_t>(col[v])].push_back(v);
    std::erase_if(cover.parts, [](const auto& p) { return p.empty(); });
    return cover;
}

}  // namespace detail

/// σ(G): minimum number of vertex-disjoint cliques covering V, i.e. χ(complement(G)).
/// Iterative deepening on the colour count; the returned cover is always valid.
inline CliqueCoverResult clique_cover_number(const Graph& g, const SolverConfig& cfg) {
    cfg.validate();
    const Graph h = complement(g);
    CliqueCoverResult out;

    auto greedy = detail::dsatur_greedy(h);
    out.cover = detail::cover_from_colouring(greedy);
    out.value = out.cover.parts.size();

    // A maximum independent set of g is a clique of h: lower bound and symmetry breaking.
    auto alpha = max_independent_set(g, cfg);
    out.lower_bound = alpha.size();
    if (!alpha.proven_optimal) return out;
    if (out.lower_bound == out.value) {
        out.proven_optimal = true;
        return out;
    }

    detail::Deadline deadline(cfg.time_budget);
    std::uint64_t nodes = 0;
    for (std::size_t k = out.lower_bound; k < out.value; ++k) {
        detail::ColoringSearch search(h, k, alpha.vertices, cfg, deadline, nodes);
        auto res = search.solve();
        if (!res) return out;  // budget: greedy cover, not proven
        if (!res->empty()) {
            out.cover = detail::cover_from_colouring(*res);
            out.value = out.cover.parts.size();
            out.lower_bound = out.value;
            out.proven_optimal = true;
            return out;
        }
        out.lower_bound = k + 1;
    }
    out.proven_optimal = true;
    return out;
}

}  // namespace shannon

#endif  // SHANNON_SOLVERS_HPP
