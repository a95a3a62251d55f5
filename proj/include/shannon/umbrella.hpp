#ifndef SHANNON_UMBRELLA_HPP
#define SHANNON_UMBRELLA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "shannon/graph.hpp"
#include "shannon/lp.hpp"

namespace shannon {

/// Dense square matrix over T, row-major. Small helper so that exact scalars work too.
template <class T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, T(0)) {}

    static SquareMatrix identity(std::size_t n) {
        SquareMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    T trace() const {
        T t(0);
        for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
        return t;
    }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<T> a_;
};

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Hilbert–Schmidt inner product tr(AᵀB).
template <class T>
T hs_dot(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * b(i, j);
    return s;
}

template <class T>
std::vector<T> kron(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(x * y);
    return out;
}

template <class T>
SquareMatrix<T> kron(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    SquareMatrix<T> out(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) out(i * m + k, j * m + l) = a(i, j) * b(k, l);
    return out;
}

template <class T>
SquareMatrix<T> outer(const std::vector<T>& u) {
    SquareMatrix<T> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j) out(i, j) = u[i] * u[j];
    return out;
}

/// Handle c plus one unit vector per vertex; non-adjacent states must be orthogonal.
template <class T>
struct VectorUmbrella {
    std::size_t dim = 0;
    std::vector<T> handle;
    std::vector<std::vector<T>> states;
};

/// Handle and per-vertex states are symmetric PSD trace-1 matrices.
template <class T>
struct DensityUmbrella {
    std::size_t dim = 0;
    SquareMatrix<T> handle;
    std::vector<SquareMatrix<T>> states;
};

struct UmbrellaTolerances {
    double orthogonality = 1e-9;
    double psd_floor = 1e-9;
    double unit_norm = 1e-9;
};

template <class T>
inline constexpr bool is_exact_v = !std::is_floating_point_v<T>;

namespace detail {

template <class T>
double to_double(const T& x) {
    if constexpr (std::is_floating_point_v<T>) return static_cast<double>(x);
    else return x.get_d();
}

template <class T>
T abs_of(const T& x) {
    if constexpr (std::is_floating_point_v<T>) return std::abs(x);
    else return T(abs(x));
}

/// |x| <= tol for floating types, x == 0 for exact types.
template <class T>
bool near_zero(const T& x, double tol) {
    if constexpr (is_exact_v<T>) return sgn(x) == 0;
    else return std::abs(x) <= tol;
}

/// Exact PSD test by symmetric Gaussian elimination with diagonal pivots.
template <class T>
bool exact_psd(SquareMatrix<T> a) {
    const std::size_t n = a.size();
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && sgn(a(i, i)) != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // all remaining diagonal entries are zero: PSD iff the remaining block is zero
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && sgn(a(i, j)) != 0) return false;
            return true;
        }
        if (sgn(a(p, p)) < 0) return false;
        done[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || sgn(a(i, p)) == 0) continue;
            const T f = a(i, p) / a(p, p);
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) a(i, j) -= f * a(p, j);
        }
    }
    return true;
}

inline Eigen::MatrixXd to_eigen(const SquareMatrix<double>& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return out;
}

}  // namespace detail

/// Value and opening of an umbrella. For vectors: value = max_x (c·c)/(c·U(x))²;
/// for density matrices: value = max_x tr(C)/⟨C, A(x)⟩ (HS), which coincides with the
/// vector value on rank-one embeddings. opening = 1/value.
template <class T>
struct UmbrellaValue {
    bool usable = false;  // false when some overlap is zero (or negative, for density states)
    T value{};
    T opening{};
    std::size_t argmax = 0;  // vertex attaining the value
};

template <class T>
UmbrellaValue<T> umbrella_value(const VectorUmbrella<T>& u) {
    UmbrellaValue<T> out;
    const T cc = dot(u.handle, u.handle);
    if (u.states.empty() || detail::near_zero(cc, 0.0)) return out;
    bool first = true;
    for (std::size_t x = 0; x < u.states.size(); ++x) {
        const T o = dot(u.handle, u.states[x]);
        const T o2 = o * o;
        if (detail::near_zero(o2, 0.0)) {
            out = {};
            if constexpr (!is_exact_v<T>) out.value = std::numeric_limits<T>::infinity();
            return out;
        }
        const T open = o2 / cc;
        if (first || open < out.opening) {
            out.opening = open;
            out.argmax = x;
            first = false;
        }
    }
    out.value = T(1) / out.opening;
    out.usable = true;
    return out;
}

template <class T>
UmbrellaValue<T> umbrella_value(const DensityUmbrella<T>& u) {
    UmbrellaValue<T> out;
    const T tc = u.handle.trace();
    if (u.states.empty() || !(tc > T(0))) return out;
    bool first = true;
    for (std::size_t x = 0; x < u.states.size(); ++x) {
        const T o = hs_dot(u.handle, u.states[x]);
        if (!(o > T(0))) {
            out = {};
            if constexpr (!is_exact_v<T>) out.value = std::numeric_limits<T>::infinity();
            return out;
        }
        const T open = o / tc;
        if (first || open < out.opening) {
            out.opening = open;
            out.argmax = x;
            first = false;
        }
    }
    out.value = T(1) / out.opening;
    out.usable = true;
    return out;
}

struct UmbrellaViolation {
    enum class Kind {
        count_mismatch,
        dimension_mismatch,
        handle_norm,
        state_norm,
        orthogonality,
        zero_overlap,
        not_symmetric,
        not_psd,
        trace
    };
    Kind kind;
    std::size_t a = 0;
    std::size_t b = 0;
    double residual = 0.0;

    std::string describe() const {
        const std::string r = std::to_string(residual);
        switch (kind) {
            case Kind::count_mismatch: return "state count does not match vertex count";
            case Kind::dimension_mismatch: return "state " + std::to_string(a) + " has the wrong dimension";
            case Kind::handle_norm: return "handle is not normalized (residual " + r + ")";
            case Kind::state_norm: return "state " + std::to_string(a) + " is not normalized (residual " + r + ")";
            case Kind::orthogonality:
                return "non-adjacent vertices " + std::to_string(a) + " and " + std::to_string(b) +
                       " are not orthogonal (residual " + r + ")";
            case Kind::zero_overlap: return "state " + std::to_string(a) + " has zero overlap with the handle";
            case Kind::not_symmetric: return "matrix " + std::to_string(a) + " is not symmetric";
            case Kind::not_psd: return "matrix " + std::to_string(a) + " is not PSD (min eigenvalue " + r + ")";
            case Kind::trace: return "matrix " + std::to_string(a) + " does not have trace 1 (residual " + r + ")";
        }
        return {};
    }
};

/// Matrix index used for handle violations in density reports.
inline constexpr std::size_t kHandleIndex = std::numeric_limits<std::size_t>::max();

struct UmbrellaReport {
    bool valid = true;
    std::vector<UmbrellaViolation> violations;
    double max_orthogonality_residual = 0.0;
    double max_norm_residual = 0.0;

    void add(UmbrellaViolation v) {
        valid = false;
        violations.push_back(v);
    }
};

template <class T>
UmbrellaReport verify_umbrella(const VectorUmbrella<T>& u, const Graph& g, const UmbrellaTolerances& tol = {}) {
    using K = UmbrellaViolation::Kind;
    UmbrellaReport rep;
    if (u.states.size() != g.order()) {
        rep.add({K::count_mismatch, u.states.size(), g.order(), 0.0});
        return rep;
    }
    if (u.handle.size() != u.dim) rep.add({K::dimension_mismatch, kHandleIndex, 0, 0.0});
    for (std::size_t x = 0; x < u.states.size(); ++x)
        if (u.states[x].size() != u.dim) rep.add({K::dimension_mismatch, x, 0, 0.0});
    if (!rep.valid) return rep;

    const T hn = dot(u.handle, u.handle) - T(1);
    if (!detail::near_zero(hn, tol.unit_norm)) rep.add({K::handle_norm, 0, 0, detail::to_double(hn)});
    for (std::size_t x = 0; x < u.states.size(); ++x) {
        const T sn = dot(u.states[x], u.states[x]) - T(1);
        rep.max_norm_residual = std::max(rep.max_norm_residual, std::abs(detail::to_double(sn)));
        if (!detail::near_zero(sn, tol.unit_norm)) rep.add({K::state_norm, x, 0, detail::to_double(sn)});
        if (detail::near_zero(dot(u.handle, u.states[x]), 0.0)) rep.add({K::zero_overlap, x, 0, 0.0});
    }
    for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = x + 1; y < g.order(); ++y) {
            if (g.adjacent(x, y)) continue;
            const T d = dot(u.states[x], u.states[y]);
            const double r = std::abs(detail::to_double(d));
            rep.max_orthogonality_residual = std::max(rep.max_orthogonality_residual, r);
            if (!detail::near_zero(d, tol.orthogonality)) rep.add({K::orthogonality, x, y, r});
        }
    return rep;
}

namespace detail {

template <class T>
void check_density_matrix(const SquareMatrix<T>& m, std::size_t index, const UmbrellaTolerances& tol,
                          UmbrellaReport& rep) {
    using K = UmbrellaViolation::Kind;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (!near_zero(T(m(i, j) - m(j, i)), tol.unit_norm)) {
                rep.add({K::not_symmetric, index, 0, to_double(T(m(i, j) - m(j, i)))});
                return;
            }
    const T tr = m.trace() - T(1);
    if (!near_zero(tr, tol.unit_norm)) rep.add({K::trace, index, 0, to_double(tr)});
    if constexpr (is_exact_v<T>) {
        if (!exact_psd(m)) rep.add({K::not_psd, index, 0, -1.0});
    } else {
        const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(to_eigen(m), Eigen::EigenvaluesOnly)
                                .eigenvalues()(0);
        if (lmin < -tol.psd_floor) rep.add({K::not_psd, index, 0, lmin});
    }
}

}  // namespace detail

template <class T>
UmbrellaReport verify_umbrella(const DensityUmbrella<T>& u, const Graph& g, const UmbrellaTolerances& tol = {}) {
    using K = UmbrellaViolation::Kind;
    UmbrellaReport rep;
    if (u.states.size() != g.order()) {
        rep.add({K::count_mismatch, u.states.size(), g.order(), 0.0});
        return rep;
    }
    if (u.handle.size() != u.dim) rep.add({K::dimension_mismatch, kHandleIndex, 0, 0.0});
    for (std::size_t x = 0; x < u.states.size(); ++x)
        if (u.states[x].size() != u.dim) rep.add({K::dimension_mismatch, x, 0, 0.0});
    if (!rep.valid) return rep;

    detail::check_density_matrix(u.handle, kHandleIndex, tol, rep);
    for (std::size_t x = 0; x < u.states.size(); ++x) {
        detail::check_density_matrix(u.states[x], x, tol, rep);
        if (!(hs_dot(u.handle, u.states[x]) > T(0))) rep.add({K::zero_overlap, x, 0, 0.0});
    }
    for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = x + 1; y < g.order(); ++y) {
            if (g.adjacent(x, y)) continue;
            const T d = hs_dot(u.states[x], u.states[y]);
            const double r = std::abs(detail::to_double(d));
            rep.max_orthogonality_residual = std::max(rep.max_orthogonality_residual, r);
            if (!detail::near_zero(d, tol.orthogonality)) rep.add({K::orthogonality, x, y, r});
        }
    return rep;
}

/// Optimal umbrella for the odd cycle C_n in dimension n-2. Its Gram matrix is the
/// circulant with 1 on the diagonal and 1/(2cos(π/n)) between cycle neighbours, which
/// is PSD of rank n-2; coordinates come from the real Fourier basis. Every state makes
/// the same angle with the handle e_0 and the value is n·cos(π/n)/(1+cos(π/n)).
inline VectorUmbrella<double> odd_cycle_umbrella(std::size_t n) {
    if (n < 5 || n % 2 == 0) throw Error("odd_cycle_umbrella requires odd n >= 5");
    const double pi = std::numbers::pi;
    const double dn = static_cast<double>(n);
    const double cp = std::cos(pi / dn);
    const std::size_t half = (n - 1) / 2;
    VectorUmbrella<double> u;
    u.dim = n - 2;
    u.handle.assign(u.dim, 0.0);
    u.handle[0] = 1.0;
    auto lambda = [&](std::size_t k) { return 1.0 + std::cos(2.0 * pi * static_cast<double>(k) / dn) / cp; };
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> s;
        s.reserve(u.dim);
        s.push_back(std::sqrt(lambda(0) / dn));
        for (std::size_t k = 1; k < half; ++k) {
            const double amp = std::sqrt(2.0 * lambda(k) / dn);
            const double ang = 2.0 * pi * static_cast<double>(i * k % n) / dn;
            s.push_back(amp * std::cos(ang));
            s.push_back(amp * std::sin(ang));
        }
        u.states.push_back(std::move(s));
    }
    return u;
}

/// All states equal to the handle; valid for complete graphs, value 1.
template <class T>
VectorUmbrella<T> trivial_umbrella(std::size_t n) {
    VectorUmbrella<T> u;
    u.dim = 1;
    u.handle = {T(1)};
    u.states.assign(n, std::vector<T>{T(1)});
    return u;
}

/// States U(x)⊗V(y) indexed like strong_product(G, H); handle c_G⊗c_H.
template <class T>
VectorUmbrella<T> tensor_umbrella(const VectorUmbrella<T>& u, const VectorUmbrella<T>& v,
                                  std::size_t vertex_limit = kDefaultVertexLimit) {
    detail::checked_product_size(u.states.size(), v.states.size(), vertex_limit);
    VectorUmbrella<T> out;
    out.dim = u.dim * v.dim;
    out.handle = kron(u.handle, v.handle);
    for (const auto& a : u.states)
        for (const auto& b : v.states) out.states.push_back(kron(a, b));
    return out;
}

template <class T>
DensityUmbrella<T> tensor_umbrella(const DensityUmbrella<T>& u, const DensityUmbrella<T>& v,
                                   std::size_t vertex_limit = kDefaultVertexLimit) {
    detail::checked_product_size(u.states.size(), v.states.size(), vertex_limit);
    DensityUmbrella<T> out;
    out.dim = u.dim * v.dim;
    out.handle = kron(u.handle, v.handle);
    for (const auto& a : u.states)
        for (const auto& b : v.states) out.states.push_back(kron(a, b));
    return out;
}

/// Rank-one embedding u ↦ u uᵀ of every state and of the handle.
template <class T>
DensityUmbrella<T> density_from_vector(const VectorUmbrella<T>& u) {
    DensityUmbrella<T> out;
    out.dim = u.dim;
    out.handle = outer(u.handle);
    for (const auto& s : u.states) out.states.push_back(outer(s));
    return out;
}

/// tr(A²), after checking that A is a density matrix.
template <class T>
T purity(const SquareMatrix<T>& a, const UmbrellaTolerances& tol = {}) {
    UmbrellaReport rep;
    detail::check_density_matrix(a, 0, tol, rep);
    if (!rep.valid) throw Error("purity: " + rep.violations.front().describe());
    return hs_dot(a, a);
}

struct PurifyReport {
    DensityUmbrella<double> umbrella;
    std::vector<std::size_t> degenerate;  // vertices whose top eigenvalue was tied
    double value_before = 0.0;
    double value_after = 0.0;
};

/// Replace each state by the projector onto its top eigenvector. Eigenvalues within
/// tol of the maximum count as ties; the lowest-index eigenvector among them is used.
inline PurifyReport purify_umbrella(const DensityUmbrella<double>& d, const Graph& g,
                                    const UmbrellaTolerances& tol = {}) {
    const auto check = verify_umbrella(d, g, tol);
    if (!check.valid) throw Error("purify: input is not a valid umbrella: " + check.violations.front().describe());
    PurifyReport rep;
    rep.value_before = umbrella_value(d).value;
    rep.umbrella.dim = d.dim;
    rep.umbrella.handle = d.handle;
    for (std::size_t x = 0; x < d.states.size(); ++x) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::to_eigen(d.states[x]));
        const auto& lam = es.eigenvalues();
        const Eigen::Index last = lam.size() - 1;
        Eigen::Index pick = last;
        for (Eigen::Index k = 0; k < last; ++k)
            if (lam(last) - lam(k) <= tol.psd_floor) {
                pick = k;
                break;
            }
        if (pick != last) rep.degenerate.push_back(x);
        std::vector<double> v(d.dim);
        for (std::size_t i = 0; i < d.dim; ++i) v[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), pick);
        rep.umbrella.states.push_back(outer(v));
    }
    rep.value_after = umbrella_value(rep.umbrella).value;
    return rep;
}

// JSON: {dim, kind: "vector"|"density", handle, states}. Numbers are written as decimal
// strings: 17 significant digits for doubles (round-trips exactly), "p/q" for rationals.

namespace detail {

template <class T>
std::string scalar_to_string(const T& x) {
    if constexpr (is_exact_v<T>) {
        return to_string(x);
    } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
}

template <class T>
T scalar_from_json(const nlohmann::json& j) {
    if constexpr (is_exact_v<T>) {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return T(j.get<long>());
        throw Error("umbrella json: exact scalars must be strings 'p/q' or integers");
    } else {
        if (j.is_number()) return j.get<double>();
        if (j.is_string()) {
            const auto s = j.get<std::string>();
            if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw Error("umbrella json: bad number '" + s + "'");
            return v;
        }
        throw Error("umbrella json: expected a number");
    }
}

template <class T>
nlohmann::json vector_json(const std::vector<T>& v) {
    auto a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(scalar_to_string(x));
    return a;
}

template <class T>
nlohmann::json matrix_json(const SquareMatrix<T>& m) {
    auto a = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(scalar_to_string(m(i, j)));
        a.push_back(std::move(row));
    }
    return a;
}

template <class T>
std::vector<T> vector_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error("umbrella json: expected an array");
    std::vector<T> v;
    for (const auto& x : j) v.push_back(scalar_from_json<T>(x));
    return v;
}

template <class T>
SquareMatrix<T> matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error("umbrella json: expected a matrix");
    SquareMatrix<T> m(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != j.size()) throw Error("umbrella json: matrix is not square");
        for (std::size_t k = 0; k < j.size(); ++k) m(i, k) = scalar_from_json<T>(j[i][k]);
    }
    return m;
}

}  // namespace detail

template <class T>
nlohmann::json umbrella_to_json(const VectorUmbrella<T>& u) {
    nlohmann::json j;
    j["dim"] = u.dim;
    j["kind"] = "vector";
    j["handle"] = detail::vector_json(u.handle);
    auto s = nlohmann::json::array();
    for (const auto& x : u.states) s.push_back(detail::vector_json(x));
    j["states"] = std::move(s);
    return j;
}

template <class T>
nlohmann::json umbrella_to_json(const DensityUmbrella<T>& u) {
    nlohmann::json j;
    j["dim"] = u.dim;
    j["kind"] = "density";
    j["handle"] = detail::matrix_json(u.handle);
    auto s = nlohmann::json::array();
    for (const auto& x : u.states) s.push_back(detail::matrix_json(x));
    j["states"] = std::move(s);
    return j;
}

/// Either kind of umbrella, as read from JSON.
template <class T>
struct AnyUmbrella {
    std::optional<VectorUmbrella<T>> vector;
    std::optional<DensityUmbrella<T>> density;

    bool is_vector() const noexcept { return vector.has_value(); }
};

template <class T>
AnyUmbrella<T> umbrella_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("dim") || !j.contains("handle") || !j.contains("states"))
        throw Error("umbrella json: expected {dim, kind, handle, states}");
    const auto kind = j.at("kind").get<std::string>();
    AnyUmbrella<T> out;
    if (kind == "vector") {
        VectorUmbrella<T> u;
        u.dim = j.at("dim").get<std::size_t>();
        u.handle = detail::vector_from_json<T>(j.at("handle"));
        for (const auto& s : j.at("states")) u.states.push_back(detail::vector_from_json<T>(s));
        out.vector = std::move(u);
    } else if (kind == "density") {
        DensityUmbrella<T> u;
        u.dim = j.at("dim").get<std::size_t>();
        u.handle = detail::matrix_from_json<T>(j.at("handle"));
        for (const auto& s : j.at("states")) u.states.push_back(detail::matrix_from_json<T>(s));
        out.density = std::move(u);
    } else {
        throw Error("umbrella json: unknown kind '" + kind + "'");
    }
    return out;
}

}  // namespace shannon

#endif  // SHANNON_UMBRELLA_HPP
