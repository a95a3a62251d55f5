#ifndef SHANNON_LP_HPP
#define SHANNON_LP_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "shannon/graph.hpp"
#include "shannon/solvers.hpp"

namespace shannon {

/// Arbitrary-precision rational, always stored in lowest terms with positive denominator.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw Error("not a rational number: '" + s + "'");
    q.canonicalize();
    return q;
}

/// maximize objective·x subject to rows·x <= rhs, x >= 0.
struct LinearProgram {
    std::vector<Rational> objective;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;

    std::size_t variables() const noexcept { return objective.size(); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    std::vector<Rational> x;
    std::size_t pivots = 0;
};

class LpError : public Error {
public:
    LpError(const std::string& what, LpStatus status) : Error(what), status_(status) {}
    LpStatus status() const noexcept { return status_; }

private:
    LpStatus status_;
};

namespace detail {

// Dense simplex tableau with Bland's rule. Row i holds basic variable basis[i];
// the last column is the right-hand side.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : t_(rows, std::vector<Rational>(cols + 1)), basis_(rows), cols_(cols) {}

    std::vector<std::vector<Rational>>& rows() { return t_; }
    std::vector<std::size_t>& basis() { return basis_; }
    std::size_t cols() const { return cols_; }  // kept explicitly: the program may have no rows

    /// Maximize cost·x over the current basis. Columns with allowed[j] == false never enter.
    /// Returns false when unbounded.
    bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed, std::size_t& pivots) {
        const std::size_t m = t_.size();
        const std::size_t n = cols();
        while (true) {
            // reduced costs
            std::size_t enter = n;
            for (std::size_t j = 0; j < n && enter == n; ++j) {
                if (!allowed[j]) continue;
                Rational r = cost[j];
                for (std::size_t i = 0; i < m; ++i)
                    if (sgn(t_[i][j]) != 0) r -= cost[basis_[i]] * t_[i][j];
                if (sgn(r) > 0) enter = j;
            }
            if (enter == n) return true;
            std::size_t leave = m;
            Rational best_ratio;
            for (std::size_t i = 0; i < m; ++i) {
                if (sgn(t_[i][enter]) <= 0) continue;
                Rational ratio = t_[i][n] / t_[i][enter];
                if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m) return false;
            pivot(leave, enter);
            ++pivots;
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        const std::size_t width = t_[r].size();
        const Rational piv = t_[r][c];
        for (auto& v : t_[r]) v /= piv;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == r || sgn(t_[i][c]) == 0) continue;
            const Rational f = t_[i][c];
            for (std::size_t j = 0; j < width; ++j)
                if (sgn(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
        }
        basis_[r] = c;
    }

private:
    std::vector<std::vector<Rational>> t_;
    std::vector<std::size_t> basis_;
    std::size_t cols_;
};

}  // namespace detail

/// Exact two-phase simplex. Bland's rule guarantees termination.
inline LpSolution lp_solve_exact(const LinearProgram& lp) {
    const std::size_t n = lp.variables();
    const std::size_t m = lp.rows.size();
    if (lp.rhs.size() != m) throw Error("lp: rhs length does not match row count");
    for (const auto& row : lp.rows)
        if (row.size() != n) throw Error("lp: constraint row length does not match variable count");

    std::vector<std::size_t> needs_art;
    for (std::size_t i = 0; i < m; ++i)
        if (sgn(lp.rhs[i]) < 0) needs_art.push_back(i);
    const std::size_t k = needs_art.size();
    // columns: x (n) | slack (m) | artificial (k)
    const std::size_t cols = n + m + k;
    detail::Tableau tab(m, cols);
    auto& t = tab.rows();
    std::size_t art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = sgn(lp.rhs[i]) < 0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rational(-lp.rows[i][j]) : lp.rows[i][j];
        t[i][n + i] = flip ? -1 : 1;
        t[i][cols] = flip ? Rational(-lp.rhs[i]) : lp.rhs[i];
        if (flip) {
            t[i][n + m + art] = 1;
            tab.basis()[i] = n + m + art;
            ++art;
        } else {
            tab.basis()[i] = n + i;
        }
    }

    LpSolution sol;
    if (k > 0) {
        std::vector<Rational> cost(cols, 0);
        for (std::size_t a = 0; a < k; ++a) cost[n + m + a] = -1;
        std::vector<bool> allowed(cols, true);
        tab.optimize(cost, allowed, sol.pivots);
        Rational phase1 = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (tab.basis()[i] >= n + m) phase1 += t[i][cols];
        if (sgn(phase1) != 0) {
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < t.size();) {
            if (tab.basis()[i] < n + m) {
                ++i;
                continue;
            }
            std::size_t c = n + m;
            for (std::size_t j = 0; j < n + m; ++j)
                if (sgn(t[i][j]) != 0) {
                    c = j;
                    break;
                }
            if (c < n + m) {
                tab.pivot(i, c);
                ++i;
            } else {
                t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
                tab.basis().erase(tab.basis().begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    std::vector<Rational> cost(cols, 0);
    for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
    std::vector<bool> allowed(cols, true);
    for (std::size_t a = 0; a < k; ++a) allowed[n + m + a] = false;
    if (!tab.optimize(cost, allowed, sol.pivots)) {
        sol.status = LpStatus::unbounded;
        return sol;
    }
    sol.status = LpStatus::optimal;
    sol.x.assign(n, 0);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (tab.basis()[i] < n) sol.x[tab.basis()[i]] = t[i][cols];
    sol.value = 0;
    for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];
    return sol;
}

/// Like lp_solve_exact but throws LpError unless the program has an optimum.
inline LpSolution lp_solve_exact_or_throw(const LinearProgram& lp) {
    auto sol = lp_solve_exact(lp);
    if (sol.status == LpStatus::infeasible) throw LpError("lp: infeasible", sol.status);
    if (sol.status == LpStatus::unbounded) throw LpError("lp: unbounded", sol.status);
    return sol;
}

struct FractionalWeighting {
    std::vector<Rational> weights;
};

struct RosenfeldResult {
    Rational value;
    FractionalWeighting weighting;
    std::vector<std::vector<std::size_t>> constraints;  // the clique constraints used
};

struct RosenfeldOptions {
    std::size_t clique_cap = kDefaultCliqueCap;
    /// Use edges (and isolated vertices) as constraints; only valid for triangle-free graphs.
    bool edge_constraints = false;
};

namespace detail {

inline bool triangle_free(const Graph& g) {
    for (auto [u, v] : g.edges())
        if (g.neighbors(u).intersects(g.neighbors(v))) return false;
    return true;
}

}  // namespace detail

/// ρ(G): maximize Σ f(v) subject to Σ_{v∈K} f(v) <= 1 for every maximal clique K, f >= 0.
inline RosenfeldResult rosenfeld_number(const Graph& g, const RosenfeldOptions& opt = {}) {
    std::vector<std::vector<std::size_t>> cliques;
    if (opt.edge_constraints) {
        if (!detail::triangle_free(g)) throw Error("edge constraints are only exact for triangle-free graphs");
        for (auto [u, v] : g.edges()) cliques.push_back({u, v});
        for (std::size_t v = 0; v < g.order(); ++v)
            if (g.degree(v) == 0) cliques.push_back({v});
    } else {
        try {
            cliques = enumerate_maximal_cliques(g, opt.clique_cap);
        } catch (const LimitError& e) {
            throw LimitError(std::string(e.what()) +
                             (detail::triangle_free(g) ? " (graph is triangle-free: edge constraints are exact)"
                                                       : ""));
        }
    }
    LinearProgram lp;
    lp.objective.assign(g.order(), 1);
    for (const auto& k : cliques) {
        std::vector<Rational> row(g.order(), 0);
        for (auto v : k) row[v] = 1;
        lp.rows.push_back(std::move(row));
        lp.rhs.emplace_back(1);
    }
    auto sol = lp_solve_exact_or_throw(lp);
    return {sol.value, {std::move(sol.x)}, std::move(cliques)};
}

/// Every weight nonnegative and every listed clique sums to at most 1.
inline bool is_feasible_weighting(const FractionalWeighting& w, const std::vector<std::vector<std::size_t>>& cliques) {
    for (const auto& x : w.weights)
        if (sgn(x) < 0) return false;
    for (const auto& k : cliques) {
        Rational s = 0;
        for (auto v : k) {
            if (v >= w.weights.size()) return false;
            s += w.weights[v];
        }
        if (s > 1) return false;
    }
    return true;
}

}  // namespace shannon

#endif  // SHANNON_LP_HPP
