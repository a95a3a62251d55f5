#ifndef SHANNON_GRAPH_IO_HPP
#define SHANNON_GRAPH_IO_HPP

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "shannon/graph.hpp"

namespace shannon {

/// Malformed input; offset is the byte position where the problem was detected.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

enum class GraphFormat { graph6, dimacs, json };

// graph6: N(n) followed by the upper triangle in column order, six bits per byte.

inline std::string write_graph6(const Graph& g) {
    const std::size_t n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
    } else {
        out.push_back(126);
        out.push_back(126);
        for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
    }
    int acc = 0;
    int bits = 0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++bits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                bits = 0;
            }
        }
    }
    if (bits) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
    return out;
}

inline Graph parse_graph6(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    std::size_t pos = 0;
    if (text.starts_with(">>graph6<<")) pos = 10;
    auto byte = [&](std::size_t at) -> int {
        if (at >= text.size()) throw ParseError("graph6: unexpected end of input", at);
        const int c = static_cast<unsigned char>(text[at]);
        if (c < 63 || c > 126) throw ParseError("graph6: byte outside printable range", at);
        return c - 63;
    };
    std::size_t n = 0;
    if (pos >= text.size()) throw ParseError("graph6: missing header", pos);
    if (byte(pos) < 63) {
        n = static_cast<std::size_t>(byte(pos));
        pos += 1;
    } else if (pos + 1 < text.size() && byte(pos + 1) == 63) {
        for (std::size_t k = 0; k < 6; ++k) n = (n << 6) | static_cast<std::size_t>(byte(pos + 2 + k));
        pos += 8;
    } else {
        for (std::size_t k = 0; k < 3; ++k) n = (n << 6) | static_cast<std::size_t>(byte(pos + 1 + k));
        pos += 4;
    }
    if (n == 0) throw ParseError("graph6: zero vertices", 0);
    const std::size_t nbits = n * (n - 1) / 2;
    const std::size_t nbytes = (nbits + 5) / 6;
    if (text.size() - pos != nbytes)
        throw ParseError("graph6: expected " + std::to_string(nbytes) + " adjacency bytes, found " +
                             std::to_string(text.size() - pos),
                         std::min(text.size(), pos + nbytes));
    std::vector<Edge> edges;
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i, ++k) {
            const int b = byte(pos + k / 6);
            if ((b >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
        }
    }
    if (nbits % 6) {
        const int last = byte(pos + nbytes - 1);
        if (last & ((1 << (6 - nbits % 6)) - 1)) throw ParseError("graph6: nonzero padding bits", pos + nbytes - 1);
    }
    return Graph::from_edges(n, edges);
}

// DIMACS .col: "c" comments, one "p edge n m" header, "e u v" lines with 1-indexed vertices.

inline std::string write_dimacs(const Graph& g) {
    std::ostringstream os;
    const auto edges = g.edges();
    os << "p edge " << g.order() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) os << "e " << u + 1 << ' ' << v + 1 << '\n';
    return os.str();
}

inline Graph parse_dimacs(std::string_view text) {
    std::size_t n = 0;
    std::size_t declared = 0;
    bool header = false;
    std::vector<Edge> edges;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string line(text.substr(pos, eol - pos));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream is(line);
        std::string tag;
        is >> tag;
        if (tag.empty() || tag == "c") {
            // comment or blank
        } else if (tag == "p") {
            std::string kind;
            long long nn = -1;
            long long mm = -1;
            if (header) throw ParseError("dimacs: duplicate header", pos);
            if (!(is >> kind >> nn >> mm) || (kind != "edge" && kind != "col") || nn <= 0 || mm < 0)
                throw ParseError("dimacs: malformed header, expected 'p edge n m'", pos);
            n = static_cast<std::size_t>(nn);
            declared = static_cast<std::size_t>(mm);
            header = true;
        } else if (tag == "e") {
            if (!header) throw ParseError("dimacs: edge before header", pos);
            long long u = 0;
            long long v = 0;
            if (!(is >> u >> v)) throw ParseError("dimacs: malformed edge line", pos);
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n)
                throw ParseError("dimacs: vertex index out of range 1.." + std::to_string(n), pos);
            if (u == v) throw ParseError("dimacs: self-loop", pos);
            edges.emplace_back(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
        } else {
            throw ParseError("dimacs: unknown line type '" + tag + "'", pos);
        }
        pos = eol + 1;
    }
    if (!header) throw ParseError("dimacs: missing 'p edge n m' header", text.size());
    if (edges.size() != declared)
        throw ParseError("dimacs: header declares " + std::to_string(declared) + " edges, found " +
                             std::to_string(edges.size()),
                         text.size());
    return Graph::from_edges(n, edges);
}

inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.order();
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (g.labels()) j["labels"] = *g.labels();
    return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned())
        throw ParseError("json: expected object with unsigned 'n'", 0);
    const auto n = j["n"].get<std::size_t>();
    if (n == 0) throw ParseError("json: n must be positive", 0);
    std::vector<Edge> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw ParseError("json: 'edges' must be an array", 0);
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
                throw ParseError("json: edge " + std::to_string(edges.size()) + " is not a pair of vertex ids", 0);
            const auto u = e[0].get<std::size_t>();
            const auto v = e[1].get<std::size_t>();
            if (u >= n || v >= n)
                throw ParseError("json: edge " + std::to_string(edges.size()) + " vertex out of range", 0);
            if (u == v) throw ParseError("json: edge " + std::to_string(edges.size()) + " is a self-loop", 0);
            edges.emplace_back(u, v);
        }
    }
    std::optional<std::vector<Label>> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<Label>>();
    try {
        return Graph::from_edges(n, edges, std::move(labels));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("json: ") + e.what(), 0);
    }
}

inline std::string write_json(const Graph& g) { return graph_to_json(g).dump() + "\n"; }

inline Graph parse_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("json: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    return graph_from_json(j);
}

inline std::string write_graph(const Graph& g, GraphFormat format) {
    switch (format) {
        case GraphFormat::graph6: return write_graph6(g) + "\n";
        case GraphFormat::dimacs: return write_dimacs(g);
        case GraphFormat::json: return write_json(g);
    }
    return {};
}

inline Graph parse_graph(std::string_view text, GraphFormat format) {
    switch (format) {
        case GraphFormat::graph6: return parse_graph6(text);
        case GraphFormat::dimacs: return parse_dimacs(text);
        case GraphFormat::json: return parse_json(text);
    }
    throw Error("unknown graph format");
}

inline GraphFormat format_from_path(const std::string& path) {
    auto ends = [&](std::string_view s) { return path.size() >= s.size() && path.ends_with(s); };
    if (ends(".g6") || ends(".graph6")) return GraphFormat::graph6;
    if (ends(".col") || ends(".dimacs")) return GraphFormat::dimacs;
    if (ends(".json")) return GraphFormat::json;
    throw Error("cannot infer graph format from file name '" + path + "'");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline Graph read_graph_file(const std::string& path) { return parse_graph(read_file(path), format_from_path(path)); }

}  // namespace shannon

#endif  // SHANNON_GRAPH_IO_HPP
