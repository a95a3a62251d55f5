#ifndef SHANNON_CLI_HPP
#define SHANNON_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "shannon/graph.hpp"
#include "shannon/graph_io.hpp"
#include "shannon/graph_spec.hpp"
#include "shannon/haemers.hpp"
#include "shannon/kings.hpp"
#include "shannon/lp.hpp"
#include "shannon/report.hpp"
#include "shannon/solvers.hpp"
#include "shannon/theta.hpp"
#include "shannon/umbrella.hpp"

namespace shannon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitDegraded = 2;

/// Default worker count, overridden by --threads.
inline constexpr const char* kThreadsEnv = "SHANNON_THREADS";

struct Common {
    bool json = false;
    bool strict = false;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double tol = 1e-7;
    double time_budget = 60.0;
    std::uint64_t node_budget = 2'000'000'000;
    std::size_t vertex_limit = kDefaultVertexLimit;

    SolverConfig solver() const {
        SolverConfig c;
        c.seed = seed;
        c.threads = threads;
        c.time_budget = time_budget;
        c.node_budget = node_budget;
        return c;
    }
};

inline unsigned default_threads() {
    if (const char* v = std::getenv(kThreadsEnv)) {
        char* end = nullptr;
        const long n = std::strtol(v, &end, 10);
        if (end != v && *end == '\0' && n > 0 && n <= 1024) return static_cast<unsigned>(n);
    }
    return 1;
}

namespace detail {

inline std::string fmt(double x, int digits = 10) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

inline GraphFormat parse_format(const std::string& s) {
    if (s == "graph6" || s == "g6") return GraphFormat::graph6;
    if (s == "dimacs" || s == "col") return GraphFormat::dimacs;
    if (s == "json") return GraphFormat::json;
    throw Error("unknown graph format '" + s + "'");
}

inline nlohmann::json read_json_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), e.byte);
    }
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
    if (j.contains("kind")) {
        auto u = umbrella_from_json<double>(j);
        if (u.is_vector()) return *u.vector;
        return *u.density;
    }
    if (j.contains("field")) return matrix_from_json(j);
    if (j.contains("cells")) return placement_from_json(j);
    throw Error("certificate json: not an umbrella, matrix or placement");
}

inline std::vector<std::size_t> default_floors(std::size_t p) {
    std::vector<std::size_t> f;
    for (std::size_t x = 0; x + 2 < p || (x + 1 < p && x == 0); x += 2) f.push_back(x);
    return f;
}

}  // namespace detail

/// Runs one command. Returns 0 on success, 1 on invalid input, 2 when --strict is set
/// and the result is sound but not proven.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified bounds on the Shannon capacity of graphs", "shannon"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    c.threads = default_threads();
    app.add_flag("--json", c.json, "machine-readable output");
    app.add_flag("--strict", c.strict, "exit 2 when a result is not proven");
    app.add_option("--seed", c.seed, "seed for randomized components");
    app.add_option("--threads", c.threads, std::string("worker threads (default from ") + kThreadsEnv + ")")
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--tol", c.tol, "theta bracket tolerance")->check(CLI::PositiveNumber);
    app.add_option("--time-budget", c.time_budget, "solver time budget in seconds")->check(CLI::PositiveNumber);
    app.add_option("--node-budget", c.node_budget, "solver node budget")->check(CLI::PositiveNumber);
    app.add_option("--vertex-limit", c.vertex_limit, "largest graph to materialize")->check(CLI::PositiveNumber);

    int status = kExitOk;
    std::function<void()> action;
    auto degrade = [&](bool proven) {
        if (!proven && c.strict) status = kExitDegraded;
    };

    // graph-taking verbs accept the spec positionally or via --graph
    auto add_graph = [](CLI::App* sub, std::string& spec) {
        sub->add_option("graph_spec", spec, "graph spec, e.g. cycle:7 or power(cycle:5,2)");
        sub->add_option("--graph", spec, "graph spec");
    };
    auto load = [&](const std::string& spec) {
        if (spec.empty()) throw Error("missing graph spec");
        return graph_spec_parse(spec, c.vertex_limit);
    };
    std::string format = "graph6";
    auto emit_graph = [&](const Graph& g) {
        const auto f = c.json ? GraphFormat::json : detail::parse_format(format);
        out << write_graph(g, f);
    };

    // gen
    std::string gen_kind;
    std::size_t gen_n = 0;
    auto* gen = app.add_subcommand("gen", "generate cycle, path, complete or empty graphs");
    gen->add_option("kind", gen_kind)->required()->check(CLI::IsMember({"cycle", "path", "complete", "empty"}));
    gen->add_option("n", gen_n)->required();
    gen->add_option("--format", format, "graph6, dimacs or json");
    gen->callback([&] {
        action = [&] {
            const GraphKind k = gen_kind == "cycle"  ? GraphKind::cycle
                                : gen_kind == "path" ? GraphKind::path
                                : gen_kind == "complete" ? GraphKind::complete
                                                         : GraphKind::empty;
            emit_graph(generate(k, gen_n));
        };
    });

    std::string spec, spec2;
    auto* comp = app.add_subcommand("complement", "complement of a graph");
    add_graph(comp, spec);
    comp->add_option("--format", format);
    comp->callback([&] { action = [&] { emit_graph(complement(load(spec))); }; });

    std::string product_kind = "strong";
    auto* prod = app.add_subcommand("product", "strong or co-normal product of two graphs");
    prod->add_option("left", spec)->required();
    prod->add_option("right", spec2)->required();
    prod->add_option("--kind", product_kind)->check(CLI::IsMember({"strong", "conormal"}));
    prod->add_option("--format", format);
    prod->callback([&] {
        action = [&] {
            const Graph a = load(spec);
            const Graph b = load(spec2);
            emit_graph(product_kind == "strong" ? strong_product(a, b, c.vertex_limit)
                                                : conormal_product(a, b, c.vertex_limit));
        };
    });

    std::size_t power_k = 2;
    auto* pow = app.add_subcommand("power", "strong power of a graph");
    add_graph(pow, spec);
    pow->add_option("-k,--k", power_k)->check(CLI::PositiveNumber);
    pow->add_option("--format", format);
    pow->callback([&] { action = [&] { emit_graph(strong_power(load(spec), power_k, c.vertex_limit)); }; });

    auto set_json = [&](const Graph& g, const std::vector<std::size_t>& vs) {
        nlohmann::json labels = nlohmann::json::array();
        for (auto v : vs) labels.push_back(g.label_of(v));
        return labels;
    };

    auto* alpha = app.add_subcommand("alpha", "independence number");
    add_graph(alpha, spec);
    alpha->callback([&] {
        action = [&] {
            const Graph g = load(spec);
            const auto r = max_independent_set(g, c.solver());
            if (!g.is_independent(r.vertices)) throw Error("internal: dependent set");
            degrade(r.proven_optimal);
            if (c.json) {
                out << nlohmann::json{{"value", r.size()}, {"proven_optimal", r.proven_optimal},
                                      {"upper_bound", r.upper_bound}, {"vertices", r.vertices},
                                      {"labels", set_json(g, r.vertices)}}
                           .dump()
                    << "\n";
            } else {
                out << "alpha = " << r.size() << (r.proven_optimal ? " (proven optimal)" : " (not proven)")
                    << ", upper bound " << r.upper_bound << "\nvertices:";
                for (auto v : r.vertices) out << " " << v;
                out << "\n";
            }
        };
    });

    auto* omega = app.add_subcommand("omega", "clique number");
    add_graph(omega, spec);
    omega->callback([&] {
        action = [&] {
            const Graph g = load(spec);
            const auto r = max_clique(g, c.solver());
            if (!g.is_clique(r.clique)) throw Error("internal: not a clique");
            degrade(r.proven_optimal);
            if (c.json)
                out << nlohmann::json{{"value", r.size()}, {"proven_optimal", r.proven_optimal},
                                      {"upper_bound", r.upper_bound}, {"vertices", r.clique}}
                           .dump()
                    << "\n";
            else
                out << "omega = " << r.size() << (r.proven_optimal ? " (proven optimal)" : " (not proven)") << "\n";
        };
    });

    auto* sigma = app.add_subcommand("sigma", "clique cover number");
    add_graph(sigma, spec);
    sigma->callback([&] {
        action = [&] {
            const Graph g = load(spec);
            const auto r = clique_cover_number(g, c.solver());
            if (!is_valid_clique_cover(g, r.cover)) throw Error("internal: invalid cover");
            degrade(r.proven_optimal);
            if (c.json)
                out << nlohmann::json{{"value", r.value}, {"proven_optimal", r.proven_optimal},
                                      {"lower_bound", r.lower_bound}, {"cover", r.cover.parts}}
                           .dump()
                    << "\n";
            else {
                out << "sigma = " << r.value << (r.proven_optimal ? " (proven optimal)" : " (greedy, not proven)")
                    << "\n";
                for (const auto& part : r.cover.parts) {
                    out << " {";
                    for (std::size_t i = 0; i < part.size(); ++i) out << (i ? "," : "") << part[i];
                    out << "}";
                }
                out << "\n";
            }
        };
    });

    bool rho_edges = false;
    std::size_t clique_cap = kDefaultCliqueCap;
    auto* rho = app.add_subcommand("rho", "Rosenfeld number (exact rational LP)");
    add_graph(rho, spec);
    rho->add_flag("--edge-constraints", rho_edges, "use edges as constraints (triangle-free graphs only)");
    rho->add_option("--clique-cap", clique_cap)->check(CLI::PositiveNumber);
    rho->callback([&] {
        action = [&] {
            const Graph g = load(spec);
            const auto r = rosenfeld_number(g, {clique_cap, rho_edges});
            if (!is_feasible_weighting(r.weighting, r.constraints)) throw Error("internal: infeasible weighting");
            if (c.json) {
                nlohmann::json w = nlohmann::json::object();
                for (std::size_t v = 0; v < r.weighting.weights.size(); ++v)
                    w[std::to_string(v)] = to_string(r.weighting.weights[v]);
                out << nlohmann::json{{"value", to_string(r.value)}, {"weights", w}}.dump() << "\n";
            } else {
                out << "rho = " << to_string(r.value) << " (" << detail::fmt(r.value.get_d(), 7) << ")\nweights:";
                for (const auto& x : r.weighting.weights) out << " " << to_string(x);
                out << "\n";
            }
        };
    });

    auto* theta = app.add_subcommand("theta", "Lovasz theta with certified bracket");
    add_graph(theta, spec);
    theta->callback([&] {
        action = [&] {
            const Graph g = load(spec);
            const auto b = lovasz_theta(g, c.tol);
            degrade(b.converged);
            if (c.json)
                out << nlohmann::json{{"lo", b.lo}, {"hi", b.hi}, {"gap", b.gap()}, {"converged", b.converged},
                                      {"iterations", b.iterations}}
                           .dump()
                    << "\n";
            else
                out << "theta = " << detail::fmt((b.lo + b.hi) / 2.0, 8) << " in [" << detail::fmt(b.lo) << ", "
                    << detail::fmt(b.hi) << "]" << (b.converged ? "" : " (bracket wider than tolerance)") << "\n";
        };
    });

    std::size_t kp = 0, kd = 0;
    std::string method = "exact", render_fmt = "ascii";
    std::vector<std::size_t> floors;
    auto* kings = app.add_subcommand("kings", "non-attacking kings on the p^d torus");
    kings->add_option("--p", kp)->required();
    kings->add_option("--d", kd)->required();
    kings->add_option("--method", method)->check(CLI::IsMember({"exact", "layered", "heuristic"}));
    kings->add_option("--floors", floors, "floors for the layered method")->delimiter(',');
    kings->add_option("--render", render_fmt)->check(CLI::IsMember({"ascii", "svg", "none"}));
    kings->callback([&] {
        action = [&] {
            const Board b{kp, kd};
            b.cells(c.vertex_limit);
            KingResult r;
            if (method == "exact") {
                r = exact_max_kings(b, c.solver(), c.vertex_limit);
            } else if (method == "heuristic") {
                r = heuristic_kings(b, c.solver(), c.vertex_limit);
            } else {
                if (kd < 2) throw Error("layered method needs d >= 2");
                const auto base = exact_max_kings({kp, kd - 1}, c.solver(), c.vertex_limit);
                const auto fl = floors.empty() ? detail::default_floors(kp) : floors;
                r.placement = layered_construction(base.placement, fl);
                r.upper_bound = theta_king_bound(b);
                r.proven_optimal = r.placement.size() == r.upper_bound;
            }
            if (!verify_placement(r.placement).valid()) throw Error("internal: invalid placement");
            r.placement = canonicalize(r.placement);
            degrade(r.proven_optimal);
            const std::size_t n = r.placement.size();
            if (c.json) {
                nlohmann::json j{{"count", n}, {"proven_optimal", r.proven_optimal}, {"upper_bound", r.upper_bound},
                                 {"method", method}, {"placement", placement_to_json(r.placement)}};
                if (kd <= 3 && render_fmt != "none")
                    j["render"] = render_board(r.placement, render_fmt == "svg" ? RenderFormat::svg : RenderFormat::ascii);
                out << j.dump() << "\n";
            } else {
                out << n << " kings on the " << kp << "^" << kd << " torus"
                    << (r.proven_optimal ? " (proven optimal)" : "") << ", upper bound " << r.upper_bound << "\n";
                if (kd <= 3 && render_fmt != "none")
                    out << render_board(r.placement, render_fmt == "svg" ? RenderFormat::svg : RenderFormat::ascii);
            }
        };
    });

    // umbrella gen-cycle | verify | tensor
    auto* umb = app.add_subcommand("umbrella", "umbrella certificates");
    umb->require_subcommand(1);
    std::size_t ucycle = 0;
    std::string ufile, ufile2;
    auto* ugen = umb->add_subcommand("gen-cycle", "optimal umbrella for an odd cycle");
    ugen->add_option("n", ucycle)->required();
    ugen->callback([&] {
        action = [&] {
            const auto u = odd_cycle_umbrella(ucycle);
            if (c.json) out << umbrella_to_json(u).dump() << "\n";
            else {
                const auto v = umbrella_value(u);
                out << "umbrella for C" << ucycle << " in dimension " << u.dim << ", value " << detail::fmt(v.value)
                    << ", opening " << detail::fmt(v.opening) << "\n"
                    << umbrella_to_json(u).dump() << "\n";
            }
        };
    });
    auto* uver = umb->add_subcommand("verify", "verify an umbrella against a graph");
    uver->add_option("file", ufile)->required();
    uver->add_option("--graph", spec)->required();
    uver->callback([&] {
        action = [&] {
            const Graph g = load(spec);
            const auto any = umbrella_from_json<double>(detail::read_json_file(ufile));
            UmbrellaReport rep;
            UmbrellaValue<double> val;
            if (any.is_vector()) {
                rep = verify_umbrella(*any.vector, g);
                val = umbrella_value(*any.vector);
            } else {
                rep = verify_umbrella(*any.density, g);
                val = umbrella_value(*any.density);
            }
            if (c.json) {
                nlohmann::json viol = nlohmann::json::array();
                for (const auto& v : rep.violations) viol.push_back(v.describe());
                nlohmann::json j{{"valid", rep.valid}, {"violations", viol},
                                 {"max_orthogonality_residual", rep.max_orthogonality_residual}};
                if (val.usable) {
                    j["value"] = val.value;
                    j["opening"] = val.opening;
                }
                out << j.dump() << "\n";
            } else {
                out << (rep.valid ? "valid" : "invalid") << " umbrella";
                if (val.usable) out << ", value " << detail::fmt(val.value);
                out << ", max orthogonality residual " << detail::fmt(rep.max_orthogonality_residual, 3) << "\n";
                for (const auto& v : rep.violations) out << "  " << v.describe() << "\n";
            }
            if (!rep.valid) status = kExitInvalid;
        };
    });
    auto* uten = umb->add_subcommand("tensor", "tensor product of two umbrellas");
    uten->add_option("a", ufile)->required();
    uten->add_option("b", ufile2)->required();
    uten->callback([&] {
        action = [&] {
            const auto a = umbrella_from_json<double>(detail::read_json_file(ufile));
            const auto b = umbrella_from_json<double>(detail::read_json_file(ufile2));
            nlohmann::json j;
            double value = 0.0;
            if (a.is_vector() && b.is_vector()) {
                const auto t = tensor_umbrella(*a.vector, *b.vector, c.vertex_limit);
                j = umbrella_to_json(t);
                value = umbrella_value(t).value;
            } else {
                const auto da = a.is_vector() ? density_from_vector(*a.vector) : *a.density;
                const auto db = b.is_vector() ? density_from_vector(*b.vector) : *b.density;
                const auto t = tensor_umbrella(da, db, c.vertex_limit);
                j = umbrella_to_json(t);
                value = umbrella_value(t).value;
            }
            if (!c.json) out << "tensor umbrella value " << detail::fmt(value) << "\n";
            out << j.dump() << "\n";
        };
    });

    auto* haem = app.add_subcommand("haemers", "Haemers fitting-matrix certificates");
    haem->require_subcommand(1);
    std::string mfile;
    auto* hver = haem->add_subcommand("verify", "check a fitting matrix and report its rank");
    hver->add_option("--graph", spec)->required();
    hver->add_option("--matrix", mfile)->required();
    hver->callback([&] {
        action = [&] {
            const Graph g = load(spec);
            const auto m = matrix_from_json(detail::read_json_file(mfile));
            const auto check = verify_fitting(m, g);
            const std::string convention = "zero required on non-adjacent pairs, nonzero diagonal";
            if (c.json) {
                nlohmann::json j{{"fits", check.fits()}, {"field", m.field.name()}, {"convention", convention}};
                if (check.fits()) j["rank"] = matrix_rank(m);
                else j["violation"] = check.message();
                out << j.dump() << "\n";
            } else if (check.fits()) {
                out << "fits (" << convention << "); rank over " << m.field.name() << " = " << matrix_rank(m)
                    << " bounds alpha and the capacity\n";
            } else {
                out << "does not fit: " << check.message() << " (" << convention << ")\n";
            }
            if (!check.fits()) status = kExitInvalid;
        };
    });

    std::size_t max_power = 2;
    std::vector<std::string> certs;
    auto* bounds = app.add_subcommand("bounds", "certified capacity interval");
    add_graph(bounds, spec);
    bounds->add_option("--max-power", max_power)->check(CLI::PositiveNumber);
    bounds->add_option("--certificate", certs, "umbrella, fitting matrix or placement JSON to import");
    bounds->callback([&] {
        action = [&] {
            const Graph g = load(spec);
            ReportOptions opt;
            opt.theta_tol = c.tol;
            opt.vertex_limit = c.vertex_limit;
            auto r = compute_bounds(g, spec, max_power, c.solver(), opt);
            for (const auto& path : certs) {
                auto o = combine_external_certificate(g, r, detail::certificate_from_json(detail::read_json_file(path)),
                                                      opt);
                if (!o.accepted) throw Error(path + ": " + o.message);
                r = std::move(o.report);
            }
            degrade(!r.degraded);
            if (c.json) out << report_to_json(r).dump(2) << "\n";
            else out << render_report(r);
        };
    });

    std::size_t p_max = 2;
    auto* lock = app.add_subcommand("lockin", "tabulate alpha(G^k)^(1/k) against the upper bound");
    add_graph(lock, spec);
    lock->add_option("--p-max,--max-power", p_max)->check(CLI::PositiveNumber);
    lock->callback([&] {
        action = [&] {
            const Graph g = load(spec);
            ReportOptions opt;
            opt.theta_tol = c.tol;
            opt.vertex_limit = c.vertex_limit;
            const auto s = lockin_scan(g, spec, p_max, c.solver(), opt);
            bool proven = true;
            for (const auto& row : s.rows) proven = proven && row.exact;
            degrade(proven);
            if (c.json) {
                nlohmann::json rows = nlohmann::json::array();
                for (const auto& row : s.rows)
                    rows.push_back({{"k", row.k}, {"count", row.count}, {"root", row.root}, {"exact", row.exact},
                                    {"meets_upper", row.meets_upper}});
                nlohmann::json j{{"graph", spec}, {"upper", s.upper.value}, {"upper_source", s.upper.source},
                                 {"rows", rows}, {"gap", s.gap}};
                j["lockin"] = s.lockin ? nlohmann::json(*s.lockin) : nlohmann::json(nullptr);
                out << j.dump() << "\n";
            } else {
                out << "upper bound " << display7(s.upper.value) << " (" << s.upper.source << ")\n";
                for (const auto& row : s.rows)
                    out << "k=" << row.k << "  alpha>=" << row.count << "  root " << display7(row.root)
                        << (row.exact ? "  exact" : "  heuristic") << (row.meets_upper ? "  meets upper" : "") << "\n";
                if (s.lockin) out << "lock-in at k=" << *s.lockin << "\n";
                else out << "no lock-in up to k=" << p_max << "; gap " << display7(s.gap) << "\n";
            }
        };
    });

    std::string pfile;
    auto* rend = app.add_subcommand("render", "draw a placement");
    rend->add_option("placement", pfile)->required();
    rend->add_option("--format", render_fmt)->check(CLI::IsMember({"ascii", "svg"}));
    rend->callback([&] {
        action = [&] {
            const auto pl = placement_from_json(detail::read_json_file(pfile));
            const auto check = verify_placement(pl);
            if (!check.valid()) throw Error("placement is not valid: " + check.message());
            out << render_board(pl, render_fmt == "svg" ? RenderFormat::svg : RenderFormat::ascii);
        };
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitInvalid;
    }
    try {
        if (action) action();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return status;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace shannon::cli

#endif  // SHANNON_CLI_HPP
