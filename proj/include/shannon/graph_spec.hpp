#ifndef SHANNON_GRAPH_SPEC_HPP
#define SHANNON_GRAPH_SPEC_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "shannon/graph.hpp"
#include "shannon/graph_io.hpp"

namespace shannon {

class SpecError : public Error {
public:
    SpecError(const std::string& what, std::string token, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos) + ": '" + token + "'"), token_(std::move(token)),
          pos_(pos) {}
    const std::string& token() const noexcept { return token_; }
    std::size_t position() const noexcept { return pos_; }

private:
    std::string token_;
    std::size_t pos_;
};

namespace detail {

// Grammar:
//   spec := NAME ':' INT | 'file:' PATH | 'complement(' spec ')'
//         | 'strong(' spec ',' spec ')' | 'power(' spec ',' INT ')'
class SpecParser {
public:
    SpecParser(std::string_view s, std::size_t limit) : s_(s), limit_(limit) {}

    Graph parse() {
        Graph g = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input", token_at(pos_));
        return g;
    }

private:
    [[noreturn]] void fail(const std::string& what, const std::string& tok) const { throw SpecError(what, tok, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string token_at(std::size_t p) const {
        if (p >= s_.size()) return "<end>";
        std::size_t e = p;
        while (e < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[e])) || s_[e] == '_')) ++e;
        return std::string(s_.substr(p, e == p ? 1 : e - p));
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'", token_at(pos_));
        ++pos_;
    }

    std::string word() {
        skip_ws();
        const std::size_t b = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }

    std::size_t integer() {
        skip_ws();
        const std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_ || pos_ - b > 9) {
            const std::string tok = token_at(b);
            pos_ = b;
            fail("expected a positive integer", tok);
        }
        return std::stoul(std::string(s_.substr(b, pos_ - b)));
    }

    Graph expr() {
        skip_ws();
        const std::size_t start = pos_;
        const std::string name = word();
        if (name.empty()) fail("expected a graph name", token_at(start));
        if (name == "cycle" || name == "path" || name == "complete" || name == "empty") {
            expect(':');
            const std::size_t at = pos_;
            const std::size_t n = integer();
            const GraphKind kind = name == "cycle"  ? GraphKind::cycle
                                   : name == "path" ? GraphKind::path
                                   : name == "complete" ? GraphKind::complete
                                                        : GraphKind::empty;
            try {
                return generate(kind, n);
            } catch (const Error& e) {
                pos_ = at;
                fail(e.what(), std::to_string(n));
            }
        }
        if (name == "file") {
            expect(':');
            const std::size_t b = pos_;
            while (pos_ < s_.size() && s_[pos_] != ')' && s_[pos_] != ',') ++pos_;
            const std::string path(s_.substr(b, pos_ - b));
            if (path.empty()) fail("expected a file path", token_at(b));
            try {
                return read_graph_file(path);
            } catch (const Error& e) {
                pos_ = b;
                fail(e.what(), path);
            }
        }
        if (name == "complement") {
            expect('(');
            Graph g = expr();
            expect(')');
            return complement(g);
        }
        if (name == "strong") {
            expect('(');
            Graph g = expr();
            expect(',');
            Graph h = expr();
            expect(')');
            return strong_product(g, h, limit_);
        }
        if (name == "power") {
            expect('(');
            Graph g = expr();
            expect(',');
            const std::size_t at = pos_;
            const std::size_t k = integer();
            expect(')');
            if (k == 0) {
                pos_ = at;
                fail("power exponent must be positive", "0");
            }
            return strong_power(g, k, limit_);
        }
        pos_ = start;
        fail("unknown graph name", name);
    }

    std::string_view s_;
    std::size_t limit_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// cycle:n | path:n | complete:n | empty:n | file:<path> | complement(s) | strong(s,s) | power(s,k)
inline Graph graph_spec_parse(std::string_view spec, std::size_t vertex_limit = kDefaultVertexLimit) {
    return detail::SpecParser(spec, vertex_limit).parse();
}

}  // namespace shannon

#endif  // SHANNON_GRAPH_SPEC_HPP
