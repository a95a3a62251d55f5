#ifndef SHANNON_REPORT_HPP
#define SHANNON_REPORT_HPP

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

#include "shannon/graph.hpp"
#include "shannon/haemers.hpp"
#include "shannon/kings.hpp"
#include "shannon/lp.hpp"
#include "shannon/solvers.hpp"
#include "shannon/theta.hpp"
#include "shannon/umbrella.hpp"

namespace shannon {

/// Values are displayed with 7 significant digits; the integer pair stays authoritative.
inline std::string display7(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.7g", x);
    return buf;
}

/// One row of the per-power table: best independent set found in G^k.
struct PowerRow {
    std::size_t k = 1;
    std::size_t count = 0;
    std::size_t solver_bound = 0;  // upper bound on α(G^k) from the search
    bool exact = false;
    std::string method;  // "exact", "heuristic" or "skipped"
    double root = 0.0;   // count^(1/k)
    bool meets_upper = false;
    std::vector<Label> witness;
};

struct LowerBound {
    double value = 1.0;
    std::size_t count = 1;
    std::size_t k = 1;
    bool proven = false;  // count = α(G^k) exactly
    std::string source = "power";
    std::vector<Label> witness;
};

struct UpperBound {
    double value = 0.0;
    std::string source;       // theta, rho, sigma, haemers, umbrella
    std::string certificate;  // what was verified
    std::string exact;        // exact value when rational, else empty
    bool proven = true;       // false when the bound came from a budget-limited computation
};

/// A stated king count checked against the solver.
struct ClaimCheck {
    Board board;
    std::size_t claimed = 0;
    std::size_t found = 0;
    bool proven = false;
    std::string verdict;  // agreement, discrepancy, unresolved
};

struct BoundsReport {
    std::string graph;
    std::size_t order = 0;
    LowerBound lower;
    UpperBound upper;
    std::vector<UpperBound> candidates;
    std::vector<PowerRow> table;
    std::vector<ClaimCheck> claims;
    std::vector<std::string> provenance;
    bool determined = false;
    bool degraded = false;
};

struct ReportOptions {
    double theta_tol = 1e-7;
    double match_tol = 1e-6;  // relative tolerance for "determined" and lock-in
    std::size_t vertex_limit = kDefaultVertexLimit;
    std::size_t dense_limit = kDefaultDenseLimit;
    std::size_t clique_cap = kDefaultCliqueCap;
};

/// Stated counts of non-attacking kings on toroidal boards, checked whenever a matching power is solved.
struct KingClaim {
    std::size_t p, d, kings;
};

inline const std::vector<KingClaim>& known_king_claims() {
    static const std::vector<KingClaim> claims{{5, 2, 5}, {7, 2, 10}, {5, 3, 11}, {7, 3, 30}};
    return claims;
}

/// A claim "N kings fit" agrees when a placement of N is found, and is refuted when the
/// proven optimum is smaller.
inline ClaimCheck adjudicate_claim(const Board& b, std::size_t claimed, std::size_t found, bool proven) {
    ClaimCheck c{b, claimed, found, proven, {}};
    if (found >= claimed) c.verdict = "agreement";
    else if (proven) c.verdict = "discrepancy";
    else c.verdict = "unresolved";
    return c;
}

namespace detail {

/// a^(1/ka) < b^(1/kb), decided exactly as a^kb < b^ka.
inline bool root_less(std::size_t a, std::size_t ka, std::size_t b, std::size_t kb) {
    mpz_class x, y;
    mpz_ui_pow_ui(x.get_mpz_t(), a, kb);
    mpz_ui_pow_ui(y.get_mpz_t(), b, ka);
    return x < y;
}

inline double root_of(std::size_t count, std::size_t k) {
    return std::pow(static_cast<double>(count), 1.0 / static_cast<double>(k));
}

inline bool close_to(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

inline void refresh(BoundsReport& r, const ReportOptions& opt) {
    if (r.lower.value > r.upper.value * (1.0 + 1e-12))
        throw Error("inconsistent report: lower bound " + display7(r.lower.value) + " exceeds upper bound " +
                    display7(r.upper.value));
    r.determined = close_to(r.lower.value, r.upper.value, opt.match_tol);
    for (auto& row : r.table) row.meets_upper = row.method != "skipped" && close_to(row.root, r.upper.value, opt.match_tol);
}

inline bool is_cycle(const Graph& g) { return g.order() >= 3 && g.same_adjacency(cycle(g.order())); }

inline void pick_upper(BoundsReport& r) {
    const UpperBound* best = nullptr;
    for (const auto& c : r.candidates)
        if (!best || c.value < best->value) best = &c;
    if (best) r.upper = *best;
}

}  // namespace detail

/// Capacity interval: lower = max_k α(G^k)^(1/k) over k ≤ max_power, upper = the smallest of
/// θ, ρ, σ and the baseline Haemers rank. θ is solved once on G (it is multiplicative).
inline BoundsReport compute_bounds(const Graph& g, const std::string& descriptor, std::size_t max_power,
                                   const SolverConfig& cfg, const ReportOptions& opt = {}) {
    if (max_power < 1) throw Error("max power must be at least 1");
    cfg.validate();
    BoundsReport r;
    r.graph = descriptor;
    r.order = g.order();
    const bool cyc = detail::is_cycle(g);

    bool have_lower = false;
    for (std::size_t k = 1; k <= max_power; ++k) {
        PowerRow row;
        row.k = k;
        Graph gk;
        try {
            gk = strong_power(g, k, opt.vertex_limit);
        } catch (const LimitError& e) {
            row.method = "skipped";
            r.provenance.push_back("power " + std::to_string(k) + " skipped: " + e.what());
            r.degraded = true;
            r.table.push_back(std::move(row));
            continue;
        }
        IndependentSet is;
        if (cyc && k >= 2) {
            // translations and the origin stabiliser of the torus prune the search
            const Board b{g.order(), k};
            const auto kr = exact_max_kings(b, cfg, opt.vertex_limit);
            is.vertices = placement_vertices(kr.placement);
            is.proven_optimal = kr.proven_optimal;
            is.upper_bound = kr.upper_bound;
        } else {
            is = max_independent_set(gk, cfg);
        }
        if (!gk.is_independent(is.vertices)) throw Error("solver returned a dependent set on power " + std::to_string(k));
        row.count = is.size();
        row.solver_bound = is.upper_bound;
        row.exact = is.proven_optimal;
        row.method = row.exact ? "exact" : "heuristic";
        row.root = detail::root_of(row.count, k);
        for (auto v : is.vertices) row.witness.push_back(gk.label_of(v));
        if (!row.exact) r.degraded = true;
        r.provenance.push_back("alpha(G^" + std::to_string(k) + ") " + (row.exact ? "= " : ">= ") +
                               std::to_string(row.count) + " by " + (cyc && k >= 2 ? "king search" : "branch and bound"));
        if (cyc && k >= 2)
            for (const auto& claim : known_king_claims())
                if (claim.p == g.order() && claim.d == k)
                    r.claims.push_back(adjudicate_claim({claim.p, claim.d}, claim.kings, row.count, row.exact));
        if (!have_lower || detail::root_less(r.lower.count, r.lower.k, row.count, k)) {
            r.lower = {row.root, row.count, k, row.exact, "power", row.witness};
            have_lower = true;
        }
        r.table.push_back(std::move(row));
    }
    if (!have_lower) throw Error("no power of the graph fits within the vertex limit");

    // upper-bound families, in tie-break order
    if (g.order() <= opt.dense_limit) {
        ThetaOptions topt;
        topt.dense_limit = opt.dense_limit;
        const auto br = lovasz_theta(g, opt.theta_tol, topt);
        r.candidates.push_back({br.hi, "theta", "dual matrix verified: lambda_max plus residual margin; primal lower " +
                                                    display7(br.lo),
                                {}, br.converged});
        if (!br.converged) {
            r.degraded = true;
            r.provenance.push_back("theta bracket did not reach tolerance");
        }
    } else {
        r.provenance.push_back("theta skipped: above dense limit " + std::to_string(opt.dense_limit));
    }

    try {
        RosenfeldOptions ropt;
        ropt.clique_cap = opt.clique_cap;
        const auto rho = rosenfeld_number(g, ropt);
        if (!is_feasible_weighting(rho.weighting, rho.constraints)) throw Error("rho weighting failed re-verification");
        r.candidates.push_back({rho.value.get_d(), "rho",
                                "exact LP over " + std::to_string(rho.constraints.size()) + " maximal cliques",
                                to_string(rho.value), true});
    } catch (const LimitError& e) {
        r.provenance.push_back(std::string("rho skipped: ") + e.what());
    }

    const auto sigma = clique_cover_number(g, cfg);
    if (!is_valid_clique_cover(g, sigma.cover)) throw Error("clique cover failed re-verification");
    r.candidates.push_back({static_cast<double>(sigma.value), "sigma",
                            "clique cover with " + std::to_string(sigma.cover.parts.size()) + " parts",
                            std::to_string(sigma.value), sigma.proven_optimal});
    if (!sigma.proven_optimal) r.provenance.push_back("sigma is a greedy cover, not proven minimal");

    const auto [hb, hm] = best_baseline_certificate(g);
    r.candidates.push_back({static_cast<double>(hb.rank), "haemers",
                            "baseline fitting matrix over " + hb.field.name() +
                                " (zero on non-adjacent pairs, nonzero diagonal)",
                            std::to_string(hb.rank), true});

    detail::pick_upper(r);
    detail::refresh(r, opt);
    return r;
}

/// Rows (k, α_best(G^k), root, exact) and the first k whose root meets the upper bound.
struct LockinScan {
    std::vector<PowerRow> rows;
    UpperBound upper;
    std::optional<std::size_t> lockin;
    double gap = 0.0;  // upper minus best root
};

inline LockinScan lockin_scan(const Graph& g, const std::string& descriptor, std::size_t p_max,
                              const SolverConfig& cfg, const ReportOptions& opt = {}) {
    auto r = compute_bounds(g, descriptor, p_max, cfg, opt);
    LockinScan s{r.table, r.upper, std::nullopt, r.upper.value - r.lower.value};
    for (const auto& row : s.rows)
        if (row.meets_upper) {
            s.lockin = row.k;
            break;
        }
    return s;
}

using Certificate = std::variant<VectorUmbrella<double>, DensityUmbrella<double>, FittingMatrix, Placement>;

struct CombineOutcome {
    BoundsReport report;
    bool accepted = false;
    bool improved = false;
    std::string message;
};

namespace detail {

/// Cells are vertex tuples of G^d; two cells conflict when every coordinate is equal or adjacent in G.
inline std::optional<std::string> check_power_placement(const Graph& g, const Placement& pl) {
    if (pl.board.p != g.order())
        return "placement side " + std::to_string(pl.board.p) + " does not match the graph order " +
               std::to_string(g.order());
    for (std::size_t i = 0; i < pl.cells.size(); ++i) {
        if (pl.cells[i].size() != pl.board.d) return "cell " + std::to_string(i) + " does not have d coordinates";
        for (auto x : pl.cells[i])
            if (x >= g.order()) return "cell " + std::to_string(i) + " has a coordinate outside the vertex range";
    }
    for (std::size_t i = 0; i < pl.cells.size(); ++i)
        for (std::size_t j = i + 1; j < pl.cells.size(); ++j) {
            bool conflict = true;
            for (std::size_t k = 0; k < pl.board.d && conflict; ++k) {
                const auto a = pl.cells[i][k];
                const auto b = pl.cells[j][k];
                conflict = a == b || g.adjacent(a, b);
            }
            if (conflict)
                return "cells " + std::to_string(i) + " and " + std::to_string(j) + " are equal or adjacent in G^" +
                       std::to_string(pl.board.d);
        }
    return std::nullopt;
}

template <class U>
std::optional<std::string> umbrella_upper(const Graph& g, const U& u, UpperBound& out) {
    const auto rep = verify_umbrella(u, g);
    if (!rep.valid) return rep.violations.front().describe();
    const auto v = umbrella_value(u);
    if (!v.usable) return std::string("umbrella has a state orthogonal to the handle");
    out = {v.value, "umbrella", "imported umbrella, max orthogonality residual " + display7(rep.max_orthogonality_residual),
           {}, true};
    return std::nullopt;
}

}  // namespace detail

/// Tighten a report with an imported certificate. A certificate that fails verification
/// leaves the report unchanged and is reported with the verifier's message.
inline CombineOutcome combine_external_certificate(const Graph& g, const BoundsReport& report, const Certificate& cert,
                                                   const ReportOptions& opt = {}) {
    CombineOutcome out{report, false, false, {}};
    if (g.order() != report.order) {
        out.message = "certificate graph does not match the report";
        return out;
    }
    std::optional<std::string> err;
    if (const auto* pl = std::get_if<Placement>(&cert)) {
        err = detail::check_power_placement(g, *pl);
        if (!err) {
            out.accepted = true;
            const std::size_t n = pl->cells.size();
            const std::size_t d = pl->board.d;
            out.message = "placement of " + std::to_string(n) + " on G^" + std::to_string(d) + " gives " +
                          display7(detail::root_of(n, d));
            if (n > 0 && detail::root_less(report.lower.count, report.lower.k, n, d)) {
                LowerBound lb{detail::root_of(n, d), n, d, false, "placement", {}};
                for (const auto& c : pl->cells) lb.witness.emplace_back(c.begin(), c.end());
                out.report.lower = std::move(lb);
                out.improved = true;
                out.report.provenance.push_back("lower bound from imported placement: " + out.message);
            }
        }
    } else {
        UpperBound ub;
        if (const auto* vu = std::get_if<VectorUmbrella<double>>(&cert)) err = detail::umbrella_upper(g, *vu, ub);
        else if (const auto* du = std::get_if<DensityUmbrella<double>>(&cert)) err = detail::umbrella_upper(g, *du, ub);
        else {
            const auto& m = std::get<FittingMatrix>(cert);
            const auto check = verify_fitting(m, g);
            if (!check.fits()) err = check.message();
            else {
                const auto rank = matrix_rank(m);
                ub = {static_cast<double>(rank), "haemers", "imported fitting matrix over " + m.field.name(),
                      std::to_string(rank), true};
            }
        }
        if (!err) {
            out.accepted = true;
            out.message = ub.source + " certificate gives " + display7(ub.value);
            out.report.candidates.push_back(ub);
            if (ub.value < report.upper.value) {
                out.report.upper = ub;
                out.improved = true;
                out.report.provenance.push_back("upper bound from imported certificate: " + out.message);
            }
        }
    }
    if (err) {
        out.report = report;
        out.message = "certificate rejected: " + *err;
        return out;
    }
    detail::refresh(out.report, opt);
    return out;
}

// JSON carries no timings, so identical seeds and budgets give identical bytes.

inline nlohmann::json report_to_json(const BoundsReport& r) {
    using nlohmann::json;
    auto upper_json = [](const UpperBound& u) {
        json j{{"value", u.value}, {"display", display7(u.value)}, {"source", u.source},
               {"certificate", u.certificate}, {"proven", u.proven}};
        if (!u.exact.empty()) j["exact"] = u.exact;
        return j;
    };
    json j;
    j["graph"] = r.graph;
    j["order"] = r.order;
    j["lower"] = {{"value", r.lower.value}, {"display", display7(r.lower.value)}, {"count", r.lower.count},
                  {"k", r.lower.k}, {"proven", r.lower.proven}, {"source", r.lower.source},
                  {"witness", r.lower.witness}};
    j["upper"] = upper_json(r.upper);
    j["interval"] = {r.lower.value, r.upper.value};
    j["determined"] = r.determined;
    j["degraded"] = r.degraded;
    auto cands = json::array();
    for (const auto& c : r.candidates) cands.push_back(upper_json(c));
    j["candidates"] = std::move(cands);
    auto table = json::array();
    for (const auto& row : r.table)
        table.push_back({{"k", row.k}, {"count", row.count}, {"solver_bound", row.solver_bound}, {"exact", row.exact},
                         {"method", row.method}, {"root", row.root}, {"display", display7(row.root)},
                         {"meets_upper", row.meets_upper}});
    j["table"] = std::move(table);
    auto claims = json::array();
    for (const auto& c : r.claims)
        claims.push_back({{"p", c.board.p}, {"d", c.board.d}, {"claimed", c.claimed}, {"found", c.found},
                          {"proven", c.proven}, {"verdict", c.verdict}});
    j["claims"] = std::move(claims);
    j["provenance"] = r.provenance;
    return j;
}

inline std::string render_report(const BoundsReport& r) {
    std::ostringstream os;
    os << "graph: " << r.graph << " (" << r.order << " vertices)\n";
    os << "capacity in [" << display7(r.lower.value) << ", " << display7(r.upper.value) << "]"
       << (r.determined ? "  determined" : "") << "\n";
    os << "lower: " << r.lower.count << "^(1/" << r.lower.k << ") = " << display7(r.lower.value) << " from "
       << r.lower.source << (r.lower.proven ? " (proven alpha)" : " (constructive)") << "\n";
    os << "upper: " << display7(r.upper.value) << " from " << r.upper.source;
    if (!r.upper.exact.empty()) os << " = " << r.upper.exact;
    os << " [" << r.upper.certificate << "]\n";
    os << "candidates:";
    for (const auto& c : r.candidates) os << " " << c.source << "=" << (c.exact.empty() ? display7(c.value) : c.exact);
    os << "\n  k  count  root      status\n";
    for (const auto& row : r.table) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%3zu  %5zu  %-8s  %s%s\n", row.k, row.count, display7(row.root).c_str(),
                      row.method.c_str(), row.meets_upper ? "  meets upper" : "");
        os << buf;
    }
    for (const auto& c : r.claims)
        os << "claim: " << c.claimed << " kings on the " << c.board.p << "^" << c.board.d << " torus; solver "
           << (c.proven ? "proved " : "found ") << c.found << ": " << c.verdict << "\n";
    for (const auto& p : r.provenance) os << "note: " << p << "\n";
    if (r.degraded) os << "warning: some entries are budget-limited\n";
    return os.str();
}

}  // namespace shannon

#endif  // SHANNON_REPORT_HPP
