#ifndef SHANNON_KINGS_HPP
#define SHANNON_KINGS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "shannon/graph.hpp"
#include "shannon/solvers.hpp"

namespace shannon {

/// The d-dimensional p-torus C_p^d.
struct Board {
    std::size_t p = 3;
    std::size_t d = 1;

    void validate() const {
        if (p < 3) throw Error("board side must be at least 3");
        if (d < 1) throw Error("board dimension must be at least 1");
    }

    /// p^d, or throws when above the limit.
    std::size_t cells(std::size_t limit = kDefaultVertexLimit) const {
        validate();
        std::size_t total = 1;
        for (std::size_t i = 0; i < d; ++i) total = detail::checked_product_size(total, p, limit);
        return total;
    }

    ProductIndex index() const { return ProductIndex(std::vector<std::size_t>(d, p)); }

    friend bool operator==(const Board&, const Board&) = default;
};

using Cell = std::vector<std::size_t>;

/// Cells claimed to be pairwise non-attacking for kings on the torus.
struct Placement {
    Board board;
    std::vector<Cell> cells;

    std::size_t size() const noexcept { return cells.size(); }
    friend bool operator==(const Placement&, const Placement&) = default;
};

/// Cell ids in the king graph / strong power numbering.
inline std::vector<std::size_t> placement_vertices(const Placement& pl) {
    const auto idx = pl.board.index();
    std::vector<std::size_t> out;
    out.reserve(pl.cells.size());
    for (const auto& c : pl.cells) out.push_back(idx.encode(c));
    std::sort(out.begin(), out.end());
    return out;
}

inline Placement placement_from_vertices(const Board& b, const std::vector<std::size_t>& ids) {
    const auto idx = b.index();
    Placement pl{b, {}};
    for (auto v : ids) pl.cells.push_back(idx.decode(v));
    return pl;
}

/// Graph of the board: cells adjacent iff every coordinate differs by 0 or ±1 mod p.
inline Graph king_graph(const Board& b, std::size_t vertex_limit = kDefaultVertexLimit) {
    const std::size_t n = b.cells(vertex_limit);
    const auto idx = b.index();
    std::vector<Bitset> rows(n, Bitset(n));
    std::vector<Label> labels;
    labels.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        const Cell c = idx.decode(v);
        labels.emplace_back(c.begin(), c.end());
        // enumerate the 3^d offset vectors
        std::size_t offsets = 1;
        for (std::size_t i = 0; i < b.d; ++i) offsets *= 3;
        for (std::size_t o = 0; o < offsets; ++o) {
            std::size_t rest = o;
            Cell w(b.d);
            for (std::size_t i = 0; i < b.d; ++i) {
                const std::size_t delta = rest % 3;  // 0 -> -1, 1 -> 0, 2 -> +1
                rest /= 3;
                w[i] = (c[i] + b.p + delta - 1) % b.p;
            }
            const std::size_t u = idx.encode(w);
            if (u != v) rows[v].set(u);
        }
    }
    return Graph::from_rows(std::move(rows), std::move(labels));
}

struct PlacementCheck {
    enum class Status { valid, attacking_pair, duplicate_cell, out_of_range, wrong_arity };
    Status status = Status::valid;
    std::size_t first = 0;   // offending cell index
    std::size_t second = 0;  // partner cell index for pair violations

    bool valid() const noexcept { return status == Status::valid; }

    std::string message() const {
        switch (status) {
            case Status::valid: return "valid";
            case Status::attacking_pair:
                return "cells " + std::to_string(first) + " and " + std::to_string(second) + " attack each other";
            case Status::duplicate_cell:
                return "cells " + std::to_string(first) + " and " + std::to_string(second) + " coincide";
            case Status::out_of_range: return "cell " + std::to_string(first) + " has a coordinate outside 0..p-1";
            case Status::wrong_arity: return "cell " + std::to_string(first) + " does not have d coordinates";
        }
        return {};
    }
};

/// Pairwise toroidal Chebyshev distance check; independent of the graph code.
inline PlacementCheck verify_placement(const Placement& pl) {
    using S = PlacementCheck::Status;
    const auto& b = pl.board;
    b.validate();
    for (std::size_t i = 0; i < pl.cells.size(); ++i) {
        if (pl.cells[i].size() != b.d) return {S::wrong_arity, i, i};
        for (auto x : pl.cells[i])
            if (x >= b.p) return {S::out_of_range, i, i};
    }
    for (std::size_t i = 0; i < pl.cells.size(); ++i) {
        for (std::size_t j = i + 1; j < pl.cells.size(); ++j) {
            std::size_t cheb = 0;
            for (std::size_t k = 0; k < b.d; ++k) {
                const std::size_t diff = pl.cells[i][k] > pl.cells[j][k] ? pl.cells[i][k] - pl.cells[j][k]
                                                                         : pl.cells[j][k] - pl.cells[i][k];
                cheb = std::max(cheb, std::min(diff, b.p - diff));
            }
            if (cheb == 0) return {S::duplicate_cell, i, j};
            if (cheb < 2) return {S::attacking_pair, i, j};
        }
    }
    return {};
}

/// Lexicographically smallest translate, cells sorted.
inline Placement canonicalize(const Placement& pl) {
    if (pl.cells.empty()) return pl;
    std::optional<std::vector<Cell>> best;
    for (const auto& anchor : pl.cells) {
        std::vector<Cell> moved;
        moved.reserve(pl.cells.size());
        for (const auto& c : pl.cells) {
            Cell m(c.size());
            for (std::size_t k = 0; k < c.size(); ++k) m[k] = (c[k] + pl.board.p - anchor[k]) % pl.board.p;
            moved.push_back(std::move(m));
        }
        std::sort(moved.begin(), moved.end());
        if (!best || moved < *best) best = std::move(moved);
    }
    return {pl.board, std::move(*best)};
}

inline Placement translate(const Placement& pl, const Cell& shift) {
    Placement out = pl;
    for (auto& c : out.cells)
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = (c[k] + shift[k]) % pl.board.p;
    return out;
}

/// Closed-form Lovász number of C_p (p/2 for even p).
inline double cycle_theta(std::size_t p) {
    if (p == 3) return 1.0;
    if (p % 2 == 0) return static_cast<double>(p) / 2.0;
    const double c = std::cos(std::numbers::pi / static_cast<double>(p));
    return static_cast<double>(p) * c / (1.0 + c);
}

/// ⌊θ(C_p)^d⌋, a bound on the number of kings.
inline std::size_t theta_king_bound(const Board& b) {
    if (b.p % 2 == 0 || b.p == 3) {
        std::size_t r = 1;
        for (std::size_t i = 0; i < b.d; ++i) r *= (b.p == 3 ? 1 : b.p / 2);
        return r;
    }
    const double v = std::pow(cycle_theta(b.p), static_cast<double>(b.d));
    // round-off guard: the closed form is irrational for odd p >= 5
    return static_cast<std::size_t>(std::floor(v * (1.0 + 1e-12)));
}

struct KingResult {
    Placement placement;
    bool proven_optimal = false;
    std::size_t upper_bound = 0;
    std::uint64_t nodes = 0;
};

namespace detail {

/// Orbit id of each cell under coordinate permutations and per-axis reflections
/// (the stabiliser of the origin in the torus automorphisms used here).
inline std::vector<int> origin_stabilizer_orbits(const Board& b) {
    const auto idx = b.index();
    const std::size_t n = idx.size();
    std::vector<int> orbit(n);
    std::map<Cell, int> ids;
    for (std::size_t v = 0; v < n; ++v) {
        const Cell c = idx.decode(v);
        // canonical representative: reflect each coordinate to min(x, p-x), then sort
        Cell r(b.d);
        for (std::size_t k = 0; k < b.d; ++k) r[k] = std::min(c[k], (b.p - c[k]) % b.p);
        std::sort(r.begin(), r.end());
        auto [it, inserted] = ids.emplace(r, static_cast<int>(ids.size()));
        orbit[v] = it->second;
    }
    return orbit;
}

}  // namespace detail

/// Maximum king placement. The first king is pinned to the origin (translations act
/// transitively) and root branches are pruned to one cell per orbit of the origin's
/// stabiliser.
inline KingResult exact_max_kings(const Board& b, const SolverConfig& cfg,
                                  std::size_t vertex_limit = kDefaultVertexLimit) {
    const Graph g = king_graph(b, vertex_limit);
    const auto orbits = detail::origin_stabilizer_orbits(b);
    auto r = max_independent_set_containing(g, {0}, cfg, &orbits);
    KingResult out;
    out.placement = placement_from_vertices(b, r.vertices);
    out.proven_optimal = r.proven_optimal;
    out.upper_bound = std::min(r.upper_bound, theta_king_bound(b));
    out.upper_bound = std::max(out.upper_bound, r.size());
    if (out.upper_bound == r.size()) out.proven_optimal = true;
    out.nodes = r.nodes;
    return out;
}

/// Heuristic placement via local search on the king graph.
inline KingResult heuristic_kings(const Board& b, const SolverConfig& cfg,
                                  std::size_t vertex_limit = kDefaultVertexLimit) {
    const Graph g = king_graph(b, vertex_limit);
    auto r = heuristic_independent_set(g, cfg);
    KingResult out;
    out.placement = placement_from_vertices(b, r.vertices);
    out.upper_bound = std::max(theta_king_bound(b), r.size());
    out.proven_optimal = out.upper_bound == r.size();
    return out;
}

/// Stack copies of a d-dimensional placement on the given floors of a (d+1)-torus.
/// The new coordinate is appended last.
inline Placement layered_construction(const Placement& base, const std::vector<std::size_t>& floors) {
    const std::size_t p = base.board.p;
    for (auto f : floors)
        if (f >= p) throw Error("floor index " + std::to_string(f) + " outside 0.." + std::to_string(p - 1));
    for (std::size_t i = 0; i < floors.size(); ++i)
        for (std::size_t j = i + 1; j < floors.size(); ++j) {
            const std::size_t diff = floors[i] > floors[j] ? floors[i] - floors[j] : floors[j] - floors[i];
            if (std::min(diff, p - diff) < 2)
                throw Error("floors " + std::to_string(floors[i]) + " and " + std::to_string(floors[j]) +
                            " are adjacent mod " + std::to_string(p));
        }
    if (!verify_placement(base).valid()) throw Error("base placement is not valid");
    Placement out{{p, base.board.d + 1}, {}};
    for (auto f : floors)
        for (const auto& c : base.cells) {
            Cell lifted = c;
            lifted.push_back(f);
            out.cells.push_back(std::move(lifted));
        }
    const auto check = verify_placement(out);
    if (!check.valid()) throw Error("layered construction produced an invalid placement: " + check.message());
    return out;
}

enum class RenderFormat { ascii, svg };

inline std::string render_board(const Placement& pl, RenderFormat format) {
    const auto& b = pl.board;
    b.validate();
    if (b.d > 3) throw Error("rendering supports d <= 3");
    const auto check = verify_placement(pl);
    if (check.status == PlacementCheck::Status::out_of_range || check.status == PlacementCheck::Status::wrong_arity)
        throw Error("cannot render: " + check.message());
    const std::size_t rows = b.d >= 2 ? b.p : 1;
    const std::size_t layers = b.d == 3 ? b.p : 1;
    // occupancy[layer][row][col]
    std::vector<std::vector<std::vector<bool>>> occ(layers, std::vector<std::vector<bool>>(rows, std::vector<bool>(b.p)));
    for (const auto& c : pl.cells) {
        const std::size_t col = c[0];
        const std::size_t row = b.d >= 2 ? c[1] : 0;
        const std::size_t layer = b.d == 3 ? c[2] : 0;
        occ[layer][row][col] = true;
    }
    std::ostringstream os;
    if (format == RenderFormat::ascii) {
        os << "torus " << b.p << "^" << b.d << ", " << pl.cells.size() << " kings, edges wrap\n";
        for (std::size_t l = 0; l < layers; ++l) {
            if (b.d == 3) os << "layer " << l << ":\n";
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = 0; c < b.p; ++c) os << (c ? " " : "") << (occ[l][r][c] ? 'K' : '.');
                os << '\n';
            }
        }
        return os.str();
    }
    const int cell = 24;
    const int gap = 16;
    const int width = static_cast<int>(b.p) * cell;
    const int height = static_cast<int>(layers * (rows * cell + gap));
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width + 2 * gap << "\" height=\"" << height + gap
       << "\">\n";
    for (std::size_t l = 0; l < layers; ++l) {
        const int oy = gap + static_cast<int>(l * (rows * cell + gap));
        os << "<g transform=\"translate(" << gap << "," << oy << ")\">\n";
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < b.p; ++c) {
                const bool dark = (r + c) % 2 == 1;
                os << "<rect x=\"" << c * cell << "\" y=\"" << r * cell << "\" width=\"" << cell << "\" height=\""
                   << cell << "\" fill=\"" << (dark ? "#b58863" : "#f0d9b5") << "\"/>\n";
                if (occ[l][r][c])
                    os << "<circle cx=\"" << c * cell + cell / 2 << "\" cy=\"" << r * cell + cell / 2
                       << "\" r=\"" << cell / 3 << "\" fill=\"#202020\"/>\n";
            }
        // dashed frame marks the wrap-around identification
        os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << rows * cell
           << "\" fill=\"none\" stroke=\"#3060c0\" stroke-dasharray=\"4 3\"/>\n";
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

inline nlohmann::json placement_to_json(const Placement& pl) {
    nlohmann::json j;
    j["p"] = pl.board.p;
    j["d"] = pl.board.d;
    j["cells"] = pl.cells;
    return j;
}

inline Placement placement_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("d") || !j.contains("cells"))
        throw Error("placement json: expected {p, d, cells}");
    Placement pl;
    pl.board.p = j.at("p").get<std::size_t>();
    pl.board.d = j.at("d").get<std::size_t>();
    pl.board.validate();
    pl.cells = j.at("cells").get<std::vector<Cell>>();
    return pl;
}

}  // namespace shannon

#endif  // SHANNON_KINGS_HPP
