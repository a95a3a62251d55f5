#ifndef SHANNON_HAEMERS_HPP
#define SHANNON_HAEMERS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

#include "shannon/graph.hpp"
#include "shannon/lp.hpp"

namespace shannon {

/// Q, or GF(p) for a prime p < 2^31.
struct Field {
    std::uint64_t p = 0;  // 0 means the rationals

    static Field rationals() { return {}; }
    static Field prime(std::uint64_t p) {
        if (p < 2 || p >= (1ULL << 31)) throw Error("field characteristic must be a prime below 2^31");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw Error("GF(" + std::to_string(p) + "): characteristic is not prime");
        return {p};
    }

    bool is_rational() const noexcept { return p == 0; }
    std::string name() const { return is_rational() ? "Q" : "GF(" + std::to_string(p) + ")"; }

    friend bool operator==(const Field&, const Field&) = default;
};

inline Field parse_field(const std::string& s) {
    if (s == "Q") return Field::rationals();
    if (s.size() > 4 && s.starts_with("GF(") && s.back() == ')') {
        const std::string digits = s.substr(3, s.size() - 4);
        if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 12)
            return Field::prime(std::stoull(digits));
    }
    throw Error("unknown field '" + s + "' (expected Q or GF(p))");
}

/// Square matrix over a field. Over GF(p) entries must be integers; they are read mod p.
struct FittingMatrix {
    Field field;
    std::vector<std::vector<Rational>> entries;

    std::size_t size() const noexcept { return entries.size(); }

    void validate() const {
        for (const auto& row : entries)
            if (row.size() != entries.size()) throw Error("fitting matrix is not square");
        if (!field.is_rational())
            for (const auto& row : entries)
                for (const auto& x : row)
                    if (x.get_den() != 1) throw Error("GF(p) matrix entries must be integers");
    }

    /// Zero test in the declared field.
    bool is_zero(std::size_t i, std::size_t j) const {
        const Rational& x = entries[i][j];
        if (field.is_rational()) return sgn(x) == 0;
        mpz_class r = x.get_num() % mpz_class(static_cast<unsigned long>(field.p));
        return r == 0;
    }
};

inline FittingMatrix identity_matrix(std::size_t n, Field f = {}) {
    FittingMatrix b{f, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, 0))};
    for (std::size_t i = 0; i < n; ++i) b.entries[i][i] = 1;
    return b;
}

inline FittingMatrix ones_matrix(std::size_t n, Field f = {}) {
    return {f, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, 1))};
}

/// A + I; zero exactly on the non-adjacent pairs.
inline FittingMatrix adjacency_plus_identity(const Graph& g, Field f = {}) {
    auto b = identity_matrix(g.order(), f);
    for (auto [u, v] : g.edges()) b.entries[u][v] = b.entries[v][u] = 1;
    return b;
}

struct FittingCheck {
    enum class Status { fits, size_mismatch, zero_diagonal, nonzero_on_nonedge };
    Status status = Status::fits;
    std::size_t i = 0;
    std::size_t j = 0;

    bool fits() const noexcept { return status == Status::fits; }
    std::string message() const {
        switch (status) {
            case Status::fits: return "fits";
            case Status::size_mismatch: return "matrix size does not match vertex count";
            case Status::zero_diagonal: return "diagonal entry " + std::to_string(i) + " is zero";
            case Status::nonzero_on_nonedge:
                return "entry (" + std::to_string(i) + "," + std::to_string(j) +
                       ") is nonzero but the vertices are not adjacent";
        }
        return {};
    }
};

/// B fits G when every diagonal entry is nonzero and B_ij = 0 for every non-adjacent
/// pair i ≠ j. Then the rows of an independent set span a diagonal block, so rank ≥ α.
inline FittingCheck verify_fitting(const FittingMatrix& b, const Graph& g) {
    using S = FittingCheck::Status;
    b.validate();
    if (b.size() != g.order()) return {S::size_mismatch, b.size(), g.order()};
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b.is_zero(i, i)) return {S::zero_diagonal, i, i};
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (i != j && !g.adjacent(i, j) && !b.is_zero(i, j)) return {S::nonzero_on_nonedge, i, j};
    return {};
}

namespace detail {

/// Fraction-free (Bareiss) elimination on integer rows.
inline std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t result = 1;
    std::uint64_t e = p - 2;
    while (e) {
        if (e & 1) result = result * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return result;
}

inline std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const std::uint64_t inv = inverse_mod(a[r][c], p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            const std::uint64_t f = a[i][c] * inv % p;
            for (std::size_t j = c; j < cols; ++j) a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
        }
        ++r;
    }
    return r;
}

}  // namespace detail

/// Exact rank in the declared field.
inline std::size_t matrix_rank(const FittingMatrix& b) {
    b.validate();
    if (b.field.is_rational()) {
        // scale each row by the lcm of its denominators
        std::vector<std::vector<mpz_class>> rows;
        rows.reserve(b.size());
        for (const auto& row : b.entries) {
            mpz_class l = 1;
            for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
            std::vector<mpz_class> out;
            out.reserve(row.size());
            for (const auto& x : row) out.push_back(x.get_num() * (l / x.get_den()));
            rows.push_back(std::move(out));
        }
        return detail::bareiss_rank(std::move(rows));
    }
    const mpz_class p(static_cast<unsigned long>(b.field.p));
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto& row : b.entries) {
        std::vector<std::uint64_t> out;
        for (const auto& x : row) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), x.get_num_mpz_t(), p.get_mpz_t());
            out.push_back(r.get_ui());
        }
        rows.push_back(std::move(out));
    }
    return detail::rank_mod_p(std::move(rows), b.field.p);
}

struct HaemersBound {
    std::size_t rank = 0;
    Field field;
};

/// rank(B) for a verified fitting matrix; an upper bound on α(G), and on Θ(G) since
/// B^{⊗k} fits G^k and has rank rank(B)^k.
inline HaemersBound haemers_certificate(const Graph& g, const FittingMatrix& b) {
    const auto check = verify_fitting(b, g);
    if (!check.fits()) throw Error("haemers: matrix does not fit the graph: " + check.message());
    return {matrix_rank(b), b.field};
}

/// Kronecker product; fits G⊠H whenever the factors fit G and H.
inline FittingMatrix kronecker(const FittingMatrix& a, const FittingMatrix& b) {
    if (!(a.field == b.field)) throw Error("kronecker: matrices are over different fields");
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    FittingMatrix out{a.field, std::vector<std::vector<Rational>>(n * m, std::vector<Rational>(n * m))};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) out.entries[i * m + k][j * m + l] = a.entries[i][j] * b.entries[k][l];
    return out;
}

/// The canned baselines: identity, A + I over Q, GF(2) and GF(3). Returns the smallest rank.
inline std::pair<HaemersBound, FittingMatrix> best_baseline_certificate(const Graph& g) {
    std::vector<FittingMatrix> candidates{identity_matrix(g.order()), adjacency_plus_identity(g),
                                          adjacency_plus_identity(g, Field::prime(2)),
                                          adjacency_plus_identity(g, Field::prime(3))};
    std::pair<HaemersBound, FittingMatrix> best{haemers_certificate(g, candidates[0]), candidates[0]};
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (!verify_fitting(candidates[i], g).fits()) continue;  // GF(p) may kill the diagonal
        const auto h = haemers_certificate(g, candidates[i]);
        if (h.rank < best.first.rank) best = {h, candidates[i]};
    }
    return best;
}

inline nlohmann::json matrix_to_json(const FittingMatrix& b) {
    nlohmann::json j;
    j["field"] = b.field.name();
    auto rows = nlohmann::json::array();
    for (const auto& row : b.entries) {
        auto r = nlohmann::json::array();
        for (const auto& x : row) r.push_back(to_string(x));
        rows.push_back(std::move(r));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline FittingMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("entries"))
        throw Error("matrix json: expected {field, entries}");
    FittingMatrix b;
    b.field = parse_field(j.at("field").get<std::string>());
    for (const auto& row : j.at("entries")) {
        if (!row.is_array()) throw Error("matrix json: each row must be an array");
        std::vector<Rational> r;
        for (const auto& x : row) {
            if (x.is_number_integer()) r.emplace_back(x.get<long>());
            else if (x.is_string()) r.push_back(parse_rational(x.get<std::string>()));
            else throw Error("matrix json: entries must be integers or 'p/q' strings");
        }
        b.entries.push_back(std::move(r));
    }
    b.validate();
    return b;
}

}  // namespace shannon

#endif  // SHANNON_HAEMERS_HPP
