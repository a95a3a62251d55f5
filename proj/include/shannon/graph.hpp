#ifndef SHANNON_GRAPH_HPP
#define SHANNON_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shannon/bitset.hpp"

namespace shannon {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested object would exceed a configured size limit.
class LimitError : public Error {
public:
    using Error::Error;
};

inline constexpr std::size_t kDefaultVertexLimit = 100'000;

using Label = std::vector<int>;
using Edge = std::pair<std::size_t, std::size_t>;

/// Mixed-radix indexing of a product vertex set, leftmost factor most significant.
class ProductIndex {
public:
    ProductIndex() = default;
    explicit ProductIndex(std::vector<std::size_t> radices) : radices_(std::move(radices)) {
        for (auto r : radices_)
            if (r == 0) throw Error("ProductIndex: zero radix");
    }

    const std::vector<std::size_t>& radices() const noexcept { return radices_; }

    std::size_t size() const noexcept {
        std::size_t s = 1;
        for (auto r : radices_) s *= r;
        return s;
    }

    std::size_t encode(const std::vector<std::size_t>& coords) const {
        if (coords.size() != radices_.size()) throw Error("ProductIndex: coordinate arity mismatch");
        std::size_t id = 0;
        for (std::size_t i = 0; i < radices_.size(); ++i) {
            if (coords[i] >= radices_[i]) throw Error("ProductIndex: coordinate out of range");
            id = id * radices_[i] + coords[i];
        }
        return id;
    }

    std::vector<std::size_t> decode(std::size_t id) const {
        if (id >= size()) throw Error("ProductIndex: id out of range");
        std::vector<std::size_t> coords(radices_.size());
        for (std::size_t i = radices_.size(); i-- > 0;) {
            coords[i] = id % radices_[i];
            id /= radices_[i];
        }
        return coords;
    }

private:
    std::vector<std::size_t> radices_;
};

/// Immutable finite simple graph with bit-vector adjacency rows.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(std::size_t n, const std::vector<Edge>& edges,
                            std::optional<std::vector<Label>> labels = std::nullopt) {
        if (n == 0) throw Error("graph must have at least one vertex");
        std::vector<Bitset> rows(n, Bitset(n));
        for (auto [u, v] : edges) {
            if (u >= n || v >= n) throw Error("edge endpoint out of range");
            if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
            rows[u].set(v);
            rows[v].set(u);
        }
        return Graph(std::move(rows), std::move(labels));
    }

    /// Rows must be symmetric with an all-zero diagonal.
    static Graph from_rows(std::vector<Bitset> rows, std::optional<std::vector<Label>> labels = std::nullopt) {
        const std::size_t n = rows.size();
        if (n == 0) throw Error("graph must have at least one vertex");
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw Error("adjacency row has wrong length");
            if (rows[i].test(i)) throw Error("self-loop at vertex " + std::to_string(i));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = rows[i].next(i + 1); j < n; j = rows[i].next(j + 1))
                if (!rows[j].test(i)) throw Error("adjacency is not symmetric");
        return Graph(std::move(rows), std::move(labels));
    }

    std::size_t order() const noexcept { return rows_.size(); }
    bool adjacent(std::size_t u, std::size_t v) const noexcept { return rows_[u].test(v); }
    const Bitset& neighbors(std::size_t v) const noexcept { return rows_[v]; }
    const std::vector<Bitset>& rows() const noexcept { return rows_; }
    std::size_t degree(std::size_t v) const noexcept { return rows_[v].count(); }

    std::size_t edge_count() const noexcept {
        std::size_t s = 0;
        for (const auto& r : rows_) s += r.count();
        return s / 2;
    }

    /// Edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (std::size_t u = 0; u < order(); ++u)
            for (std::size_t v = rows_[u].next(u + 1); v < order(); v = rows_[u].next(v + 1)) out.emplace_back(u, v);
        return out;
    }

    const std::optional<std::vector<Label>>& labels() const noexcept { return labels_; }

    /// Label tuple of v; unlabeled graphs report the vertex id as a 1-tuple.
    Label label_of(std::size_t v) const {
        if (labels_) return (*labels_)[v];
        return Label{static_cast<int>(v)};
    }

    bool is_independent(const std::vector<std::size_t>& set) const {
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (set[i] >= order()) return false;
            for (std::size_t j = i + 1; j < set.size(); ++j)
                if (set[i] == set[j] || adjacent(set[i], set[j])) return false;
        }
        return true;
    }

    bool is_clique(const std::vector<std::size_t>& set) const {
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (set[i] >= order()) return false;
            for (std::size_t j = i + 1; j < set.size(); ++j)
                if (set[i] == set[j] || !adjacent(set[i], set[j])) return false;
        }
        return true;
    }

    /// Same vertex count and adjacency; labels are metadata and not compared.
    bool same_adjacency(const Graph& o) const noexcept { return rows_ == o.rows_; }

    friend bool operator==(const Graph& a, const Graph& b) = default;

private:
    Graph(std::vector<Bitset> rows, std::optional<std::vector<Label>> labels)
        : rows_(std::move(rows)), labels_(std::move(labels)) {
        if (labels_) {
            if (labels_->size() != rows_.size()) throw Error("label count must equal vertex count");
            auto sorted = *labels_;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw Error("vertex labels must be distinct");
        }
    }

    std::vector<Bitset> rows_;
    std::optional<std::vector<Label>> labels_;
};

enum class GraphKind { cycle, path, complete, empty };

inline Graph generate(GraphKind kind, std::size_t n) {
    if (n == 0) throw Error("graph size must be positive");
    std::vector<Edge> edges;
    switch (kind) {
        case GraphKind::cycle:
            if (n < 3) throw Error("cycle requires n >= 3");
            for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
            break;
        case GraphKind::path:
            for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            break;
        case GraphKind::complete:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
            break;
        case GraphKind::empty:
            break;
    }
    return Graph::from_edges(n, edges);
}

inline Graph cycle(std::size_t n) { return generate(GraphKind::cycle, n); }
inline Graph path(std::size_t n) { return generate(GraphKind::path, n); }
inline Graph complete(std::size_t n) { return generate(GraphKind::complete, n); }
inline Graph empty_graph(std::size_t n) { return generate(GraphKind::empty, n); }

inline Graph complement(const Graph& g) {
    std::vector<Bitset> rows = g.rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].flip();
        rows[i].reset(i);
    }
    return Graph::from_rows(std::move(rows), g.labels());
}

namespace detail {

inline std::size_t checked_product_size(std::size_t a, std::size_t b, std::size_t limit) {
    if (b != 0 && a > limit / b)
        throw LimitError("product has more than " + std::to_string(limit) + " vertices");
    if (a * b > limit) throw LimitError("product has " + std::to_string(a * b) + " vertices, limit " + std::to_string(limit));
    return a * b;
}

inline std::vector<Label> product_labels(const Graph& g, const Graph& h) {
    std::vector<Label> out;
    out.reserve(g.order() * h.order());
    for (std::size_t a = 0; a < g.order(); ++a) {
        const Label la = g.label_of(a);
        for (std::size_t b = 0; b < h.order(); ++b) {
            Label l = la;
            const Label lb = h.label_of(b);
            l.insert(l.end(), lb.begin(), lb.end());
            out.push_back(std::move(l));
        }
    }
    return out;
}

}  // namespace detail

/// Strong (Shannon) product: coordinates pairwise equal-or-adjacent, not all equal.
inline Graph strong_product(const Graph& g, const Graph& h, std::size_t vertex_limit = kDefaultVertexLimit) {
    const std::size_t m = h.order();
    const std::size_t n = detail::checked_product_size(g.order(), m, vertex_limit);
    std::vector<Bitset> rows(n, Bitset(n));
    for (std::size_t a = 0; a < g.order(); ++a) {
        Bitset closed_a = g.neighbors(a);
        closed_a.set(a);
        const auto ga = closed_a.indices();
        for (std::size_t b = 0; b < m; ++b) {
            Bitset closed_b = h.neighbors(b);
            closed_b.set(b);
            const auto hb = closed_b.indices();
            Bitset& row = rows[a * m + b];
            for (auto c : ga)
                for (auto d : hb) row.set(c * m + d);
            row.reset(a * m + b);
        }
    }
    return Graph::from_rows(std::move(rows), detail::product_labels(g, h));
}

/// Co-normal (Sabidussi) product: adjacent in at least one coordinate.
inline Graph conormal_product(const Graph& g, const Graph& h, std::size_t vertex_limit = kDefaultVertexLimit) {
    const std::size_t m = h.order();
    const std::size_t n = detail::checked_product_size(g.order(), m, vertex_limit);
    std::vector<Bitset> rows(n, Bitset(n));
    for (std::size_t a = 0; a < g.order(); ++a) {
        const auto ga = g.neighbors(a).indices();
        for (std::size_t b = 0; b < m; ++b) {
            const auto hb = h.neighbors(b).indices();
            Bitset& row = rows[a * m + b];
            for (auto c : ga)
                for (std::size_t d = 0; d < m; ++d) row.set(c * m + d);
            for (std::size_t c = 0; c < g.order(); ++c)
                for (auto d : hb) row.set(c * m + d);
        }
    }
    return Graph::from_rows(std::move(rows), detail::product_labels(g, h));
}

inline Graph strong_power(const Graph& g, std::size_t k, std::size_t vertex_limit = kDefaultVertexLimit) {
    if (k == 0) throw Error("power exponent must be positive");
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total = detail::checked_product_size(total, g.order(), vertex_limit);
    Graph out = g;
    for (std::size_t i = 1; i < k; ++i) out = strong_product(out, g, vertex_limit);
    return out;
}

/// Block-diagonal union; labels become (component, vertex-label...).
inline Graph disjoint_union(const Graph& g, const Graph& h) {
    const std::size_t n = g.order() + h.order();
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(u, v);
    for (auto [u, v] : h.edges()) edges.emplace_back(u + g.order(), v + g.order());
    std::vector<Label> labels;
    for (std::size_t v = 0; v < g.order(); ++v) {
        Label l{0};
        auto x = g.label_of(v);
        l.insert(l.end(), x.begin(), x.end());
        labels.push_back(std::move(l));
    }
    for (std::size_t v = 0; v < h.order(); ++v) {
        Label l{1};
        auto x = h.label_of(v);
        l.insert(l.end(), x.begin(), x.end());
        labels.push_back(std::move(l));
    }
    return Graph::from_edges(n, edges, std::move(labels));
}

/// Induced subgraph on the given vertices, in the given order.
inline Graph induced_subgraph(const Graph& g, const std::vector<std::size_t>& vertices) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (g.adjacent(vertices[i], vertices[j])) edges.emplace_back(i, j);
    return Graph::from_edges(vertices.size(), edges);
}

}  // namespace shannon

#endif  // SHANNON_GRAPH_HPP
