#ifndef SHANNON_THETA_HPP
#define SHANNON_THETA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shannon/graph.hpp"

namespace shannon {

inline constexpr std::size_t kDefaultDenseLimit = 400;

struct ThetaOptions {
    std::size_t max_iterations = 200'000;
    std::size_t check_every = 20;
    std::size_t dense_limit = kDefaultDenseLimit;
};

/// Certified interval for θ(G): lo from a feasible primal matrix, hi from a dual matrix.
struct ThetaBracket {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd primal;  // PSD, trace 1, zero on edges
    Eigen::MatrixXd dual;    // ones on the diagonal and on non-edges
    bool converged = false;
    std::size_t iterations = 0;

    double gap() const noexcept { return hi - lo; }
};

struct EigenBound {
    double value = 0.0;   // computed extreme eigenvalue
    double margin = 0.0;  // residual-based error estimate
};

namespace detail {

/// Extreme eigenvalues of a symmetric matrix with a residual-based error margin:
/// Frobenius norm of A V - V Λ, plus the orthogonality defect of V scaled by ‖A‖,
/// plus a unit-roundoff term.
inline std::pair<EigenBound, EigenBound> extreme_eigenvalues(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const Eigen::MatrixXd& v = es.eigenvectors();
    const Eigen::VectorXd& lam = es.eigenvalues();
    const double anorm = a.norm();
    const auto n = static_cast<double>(a.rows());
    const double residual = (a * v - v * lam.asDiagonal()).norm();
    const double ortho = (v.transpose() * v - Eigen::MatrixXd::Identity(a.rows(), a.rows())).norm();
    const double eps = std::numeric_limits<double>::epsilon();
    const double margin = residual + ortho * anorm + 4.0 * n * eps * (anorm + 1.0);
    return {{lam(0), margin}, {lam(lam.size() - 1), margin}};
}

}  // namespace detail

/// Upper bound on λ_max(a), sound up to the residual estimate.
inline double certified_lambda_max(const Eigen::MatrixXd& a) {
    auto [lo, hi] = detail::extreme_eigenvalues(a);
    return hi.value + hi.margin;
}

/// Lower bound on λ_min(a).
inline double certified_lambda_min(const Eigen::MatrixXd& a) {
    auto [lo, hi] = detail::extreme_eigenvalues(a);
    return lo.value - lo.margin;
}

/// Checks the dual certificate shape (unit diagonal, ones on non-edges, symmetric) and
/// returns the certified upper bound λ_max(M) + margin, or nullopt when malformed.
inline std::optional<double> verify_dual_certificate(const Graph& g, const Eigen::MatrixXd& m) {
    const auto n = static_cast<Eigen::Index>(g.order());
    if (m.rows() != n || m.cols() != n) return std::nullopt;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (m(i, i) != 1.0) return std::nullopt;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (m(i, j) != m(j, i) || !std::isfinite(m(i, j))) return std::nullopt;
            if (i != j && !g.adjacent(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) && m(i, j) != 1.0)
                return std::nullopt;
        }
    }
    return certified_lambda_max(m);
}

/// Checks the primal certificate (symmetric, zero on edges, positive trace) and returns the
/// certified lower bound. A slightly indefinite X is repaired as (X + μI) / tr(X + μI),
/// which remains feasible, and the bound is computed for the repaired matrix.
inline std::optional<double> verify_primal_certificate(const Graph& g, const Eigen::MatrixXd& x) {
    const auto n = static_cast<Eigen::Index>(g.order());
    if (x.rows() != n || x.cols() != n) return std::nullopt;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (x(i, j) != x(j, i) || !std::isfinite(x(i, j))) return std::nullopt;
            if (i != j && g.adjacent(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) && x(i, j) != 0.0)
                return std::nullopt;
        }
    const double trace = x.trace();
    if (!(trace > 0.0)) return std::nullopt;
    const double floor = certified_lambda_min(x);
    const double shift = floor < 0.0 ? -floor : 0.0;
    const double dn = static_cast<double>(n);
    const double total = x.sum();
    const double eps = std::numeric_limits<double>::epsilon();
    const double rounding = dn * dn * eps * (x.cwiseAbs().maxCoeff() + shift);
    return (total + dn * shift - rounding) / (trace + dn * shift);
}

/// Lovász theta by an augmented-Lagrangian boundary point iteration:
///   max <J, X>  s.t.  tr X = 1,  X_ij = 0 on edges,  X ⪰ 0.
/// Each sweep solves for the multipliers in closed form and projects onto the PSD cone.
/// Iterates until the certified bracket is narrower than tol or the budget runs out.
inline ThetaBracket lovasz_theta(const Graph& g, double tol = 1e-7, const ThetaOptions& opt = {}) {
    const std::size_t n = g.order();
    if (n > opt.dense_limit)
        throw LimitError("theta: " + std::to_string(n) + " vertices exceeds dense limit " +
                         std::to_string(opt.dense_limit));
    if (!(tol > 0.0)) throw Error("theta: tolerance must be positive");
    const auto N = static_cast<Eigen::Index>(n);
    const auto edges = g.edges();
    const std::size_t m = edges.size();

    ThetaBracket best;
    auto consider = [&](const Eigen::MatrixXd& xraw, const Eigen::VectorXd& y) {
        Eigen::MatrixXd x = (xraw + xraw.transpose()) / 2.0;
        for (auto [u, v] : edges) x(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = x(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = 0.0;
        const double tr = x.trace();
        if (tr > 0.0) x /= tr;
        Eigen::MatrixXd dual = Eigen::MatrixXd::Ones(N, N);
        for (std::size_t e = 0; e < m; ++e) {
            const auto u = static_cast<Eigen::Index>(edges[e].first);
            const auto v = static_cast<Eigen::Index>(edges[e].second);
            dual(u, v) = dual(v, u) = 1.0 - y(static_cast<Eigen::Index>(e));
        }
        if (auto lo = verify_primal_certificate(g, x); lo && *lo > best.lo) {
            best.lo = *lo;
            best.primal = x;
        }
        if (auto hi = verify_dual_certificate(g, dual); hi && *hi < best.hi) {
            best.hi = *hi;
            best.dual = dual;
        }
    };

    // Trivial certificates: X = I/n, and the all-ones dual when there are no edges.
    {
        Eigen::MatrixXd x0 = Eigen::MatrixXd::Identity(N, N) / static_cast<double>(n);
        consider(x0, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m)));
    }

    const Eigen::MatrixXd J = Eigen::MatrixXd::Ones(N, N);
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(N, N) / static_cast<double>(n);
    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    double yt = 0.0;
    double sigma = 1.0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(N);
    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        best.iterations = it;
        // multipliers: (A A^T) y = A(J + Z) + A(X)/sigma - b/sigma, with A A^T = diag(2,...,2,n)
        const Eigen::MatrixXd t = Z + J + X / sigma;
        for (std::size_t e = 0; e < m; ++e) {
            const auto u = static_cast<Eigen::Index>(edges[e].first);
            const auto v = static_cast<Eigen::Index>(edges[e].second);
            y(static_cast<Eigen::Index>(e)) = (t(u, v) + t(v, u)) / 2.0;
        }
        yt = (t.trace() - 1.0 / sigma) / static_cast<double>(n);

        Eigen::MatrixXd w = -J - X / sigma;
        w.diagonal().array() += yt;
        for (std::size_t e = 0; e < m; ++e) {
            const auto u = static_cast<Eigen::Index>(edges[e].first);
            const auto v = static_cast<Eigen::Index>(edges[e].second);
            w(u, v) += y(static_cast<Eigen::Index>(e));
            w(v, u) += y(static_cast<Eigen::Index>(e));
        }
        es.compute(w);
        const Eigen::VectorXd lam = es.eigenvalues();
        const Eigen::MatrixXd& vec = es.eigenvectors();
        const Eigen::VectorXd pos = lam.cwiseMax(0.0);
        const Eigen::VectorXd neg = lam.cwiseMin(0.0);
        Z = vec * pos.asDiagonal() * vec.transpose();
        X = -sigma * (vec * neg.asDiagonal() * vec.transpose());

        if (it % opt.check_every == 0 || it == opt.max_iterations) {
            // primal residual ‖A(X) - b‖ and dual residual ‖Z - A^T y + J‖
            double ep = std::pow(X.trace() - 1.0, 2);
            for (auto [u, v] : edges) ep += 2.0 * std::pow(X(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)), 2);
            ep = std::sqrt(ep);
            Eigen::MatrixXd rd = Z + J;
            rd.diagonal().array() -= yt;
            for (std::size_t e = 0; e < m; ++e) {
                const auto u = static_cast<Eigen::Index>(edges[e].first);
                const auto v = static_cast<Eigen::Index>(edges[e].second);
                rd(u, v) -= y(static_cast<Eigen::Index>(e));
                rd(v, u) -= y(static_cast<Eigen::Index>(e));
            }
            const double ed = rd.norm();
            consider(X, y);
            if (best.gap() <= tol) {
                best.converged = true;
                break;
            }
            // keep the two residuals balanced, adjusting rarely
            if (it % (5 * opt.check_every) == 0) {
                if (ep > 1.5 * ed) sigma /= 1.3;
                else if (ed > 1.5 * ep) sigma *= 1.3;
            }
        }
    }
    return best;
}

}  // namespace shannon

#endif  // SHANNON_THETA_HPP
