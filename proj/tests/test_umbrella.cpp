#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "shannon/umbrella.hpp"

using namespace shannon;

namespace {

double closed_form(std::size_t n) {
    const double c = std::cos(std::numbers::pi / static_cast<double>(n));
    return static_cast<double>(n) * c / (1.0 + c);
}

// Exact umbrella for C4 (0-1-2-3-0): states e0, e0, e1, e1 and a rational unit handle.
VectorUmbrella<Rational> square_umbrella() {
    VectorUmbrella<Rational> u;
    u.dim = 2;
    u.handle = {Rational(3, 5), Rational(4, 5)};
    u.states = {{1, 0}, {1, 0}, {0, 1}, {0, 1}};
    return u;
}

SquareMatrix<double> from_eigen(const Eigen::MatrixXd& m) {
    SquareMatrix<double> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

// Rotation about the x axis by angle t.
std::vector<double> rotate_x(const std::vector<double>& v, double t) {
    return {v[0], std::cos(t) * v[1] - std::sin(t) * v[2], std::sin(t) * v[1] + std::cos(t) * v[2]};
}

}  // namespace

TEST(OddCycleUmbrella, ValueAndOrthogonality) {
    for (std::size_t n : {5u, 7u, 9u, 11u, 13u}) {
        const auto u = odd_cycle_umbrella(n);
        const auto rep = verify_umbrella(u, cycle(n));
        EXPECT_TRUE(rep.valid) << n;
        EXPECT_LT(rep.max_orthogonality_residual, 1e-12) << n;
        EXPECT_NEAR(umbrella_value(u).value, closed_form(n), 1e-9) << n;
    }
    EXPECT_NEAR(umbrella_value(odd_cycle_umbrella(5)).value, std::sqrt(5.0), 1e-9);
    EXPECT_NEAR(umbrella_value(odd_cycle_umbrella(7)).value, 3.3176699, 1e-5);
    EXPECT_EQ(odd_cycle_umbrella(5).dim, 3u);
}

TEST(OddCycleUmbrella, RejectsEvenOrSmall) {
    EXPECT_THROW(odd_cycle_umbrella(3), Error);
    EXPECT_THROW(odd_cycle_umbrella(6), Error);
    EXPECT_THROW(odd_cycle_umbrella(1), Error);
}

TEST(UmbrellaValue, TrivialOnComplete) {
    for (std::size_t n = 1; n <= 5; ++n) {
        auto u = trivial_umbrella<double>(n);
        EXPECT_TRUE(verify_umbrella(u, complete(n)).valid);
        EXPECT_DOUBLE_EQ(umbrella_value(u).value, 1.0);
    }
    EXPECT_FALSE(verify_umbrella(trivial_umbrella<double>(3), empty_graph(3)).valid);
}

TEST(UmbrellaValue, OpeningIsReciprocal) {
    const auto v = umbrella_value(odd_cycle_umbrella(7));
    EXPECT_NEAR(v.value * v.opening, 1.0, 1e-14);
    const auto e = umbrella_value(square_umbrella());
    EXPECT_EQ(e.value, Rational(25, 9));
    EXPECT_EQ(e.opening, Rational(9, 25));
}

TEST(UmbrellaValue, ZeroOverlapIsUnusable) {
    auto u = square_umbrella();
    u.handle = {1, 0};
    const auto v = umbrella_value(u);
    EXPECT_FALSE(v.usable);
    EXPECT_FALSE(verify_umbrella(u, cycle(4)).valid);
    auto d = odd_cycle_umbrella(5);
    d.handle = {1, 0, 0};
    d.states[0] = {0, 1, 0};
    EXPECT_FALSE(umbrella_value(d).usable);
    EXPECT_TRUE(std::isinf(umbrella_value(d).value));
}

TEST(UmbrellaValue, RotatingTheHandleIncreasesValue) {
    // the handle carries no orthogonality constraint, so any rotation keeps the umbrella valid
    const auto u = odd_cycle_umbrella(5);
    const double base = umbrella_value(u).value;
    for (double t : {0.01, 0.05, 0.2, -0.1}) {
        auto w = u;
        const std::vector<double> h = w.handle;
        w.handle = {std::cos(t) * h[0] - std::sin(t) * h[1], std::sin(t) * h[0] + std::cos(t) * h[1], h[2]};
        EXPECT_TRUE(verify_umbrella(w, cycle(5)).valid);
        EXPECT_GT(umbrella_value(w).value, base);
    }
}

TEST(UmbrellaValue, RotatingAllStatesAboutTheHandleKeepsValue) {
    auto u = odd_cycle_umbrella(5);
    const double base = umbrella_value(u).value;
    for (auto& s : u.states) s = rotate_x(s, 0.4);
    EXPECT_TRUE(verify_umbrella(u, cycle(5)).valid);
    EXPECT_NEAR(umbrella_value(u).value, base, 1e-12);
}

TEST(VerifyUmbrella, CountMismatch) {
    const auto rep = verify_umbrella(odd_cycle_umbrella(7), cycle(5));
    EXPECT_FALSE(rep.valid);
    ASSERT_FALSE(rep.violations.empty());
    EXPECT_EQ(rep.violations.front().kind, UmbrellaViolation::Kind::count_mismatch);
}

TEST(VerifyUmbrella, SwappedStatesNamePair) {
    auto u = odd_cycle_umbrella(5);
    std::swap(u.states[0], u.states[1]);
    const auto rep = verify_umbrella(u, cycle(5));
    EXPECT_FALSE(rep.valid);
    bool named = false;
    for (const auto& v : rep.violations)
        if (v.kind == UmbrellaViolation::Kind::orthogonality) {
            EXPECT_GT(v.residual, 1e-9);
            EXPECT_FALSE(cycle(5).adjacent(v.a, v.b));
            named = true;
        }
    EXPECT_TRUE(named);
    EXPECT_NE(rep.violations.front().describe().find("not orthogonal"), std::string::npos);
}

TEST(VerifyUmbrella, DimensionAndNorm) {
    auto u = odd_cycle_umbrella(5);
    u.states[2].push_back(0.0);
    EXPECT_EQ(verify_umbrella(u, cycle(5)).violations.front().kind, UmbrellaViolation::Kind::dimension_mismatch);
    u = odd_cycle_umbrella(5);
    for (auto& x : u.states[3]) x *= 1.1;
    const auto rep = verify_umbrella(u, cycle(5));
    EXPECT_FALSE(rep.valid);
    EXPECT_EQ(rep.violations.front().kind, UmbrellaViolation::Kind::state_norm);
}

TEST(VerifyUmbrella, ExactRational) {
    EXPECT_TRUE(verify_umbrella(square_umbrella(), cycle(4)).valid);
    auto u = square_umbrella();
    u.handle = {Rational(3, 5), Rational(4, 5) + Rational(1, 1000000000)};
    EXPECT_FALSE(verify_umbrella(u, cycle(4)).valid);  // exact arithmetic has no tolerance
}

TEST(Tensor, PentagonSquaredIsFive) {
    const auto u = odd_cycle_umbrella(5);
    const auto t = tensor_umbrella(u, u);
    EXPECT_TRUE(verify_umbrella(t, strong_power(cycle(5), 2)).valid);
    EXPECT_NEAR(umbrella_value(t).value, 5.0, 1e-9);
}

TEST(Tensor, TrivialFactorKeepsValue) {
    const auto u = odd_cycle_umbrella(7);
    const auto t = tensor_umbrella(u, trivial_umbrella<double>(1));
    EXPECT_TRUE(verify_umbrella(t, strong_product(cycle(7), complete(1))).valid);
    EXPECT_NEAR(umbrella_value(t).value, umbrella_value(u).value, 1e-12);
}

TEST(Tensor, PentagonTimesHeptagon) {
    const auto t = tensor_umbrella(odd_cycle_umbrella(5), odd_cycle_umbrella(7));
    EXPECT_TRUE(verify_umbrella(t, strong_product(cycle(5), cycle(7))).valid);
    EXPECT_NEAR(umbrella_value(t).value, std::sqrt(5.0) * closed_form(7), 1e-9);
}

TEST(Tensor, ExactMultiplicativity) {
    const auto u = square_umbrella();
    const auto t = tensor_umbrella(u, u);
    EXPECT_TRUE(verify_umbrella(t, strong_product(cycle(4), cycle(4))).valid);
    EXPECT_EQ(umbrella_value(t).value, umbrella_value(u).value * umbrella_value(u).value);
    const auto d = tensor_umbrella(density_from_vector(u), density_from_vector(u));
    EXPECT_EQ(umbrella_value(d).value, umbrella_value(t).value);
}

TEST(Tensor, MultiplicativeWithinTolerance) {
    for (std::size_t a : {5u, 7u, 9u})
        for (std::size_t b : {5u, 7u}) {
            const auto u = odd_cycle_umbrella(a), v = odd_cycle_umbrella(b);
            EXPECT_NEAR(umbrella_value(tensor_umbrella(u, v)).value, umbrella_value(u).value * umbrella_value(v).value,
                        1e-9);
        }
}

TEST(Density, FromVectorPreservesValue) {
    const auto u = odd_cycle_umbrella(5);
    const auto d = density_from_vector(u);
    EXPECT_TRUE(verify_umbrella(d, cycle(5)).valid);
    EXPECT_NEAR(umbrella_value(d).value, std::sqrt(5.0), 1e-9);
    for (const auto& s : d.states) EXPECT_NEAR(purity(s), 1.0, 1e-12);
}

TEST(Density, FromVectorExactBitForBit) {
    const auto u = square_umbrella();
    const auto d = density_from_vector(u);
    EXPECT_TRUE(verify_umbrella(d, cycle(4)).valid);
    EXPECT_EQ(umbrella_value(d).value, umbrella_value(u).value);
    EXPECT_EQ(umbrella_value(d).opening, umbrella_value(u).opening);
    for (const auto& s : d.states) EXPECT_EQ(purity(s), 1);
}

TEST(Density, VerifyAcceptsImageOfValidSource) {
    for (std::size_t n : {5u, 7u, 9u}) {
        const auto u = odd_cycle_umbrella(n);
        ASSERT_TRUE(verify_umbrella(u, cycle(n)).valid);
        EXPECT_TRUE(verify_umbrella(density_from_vector(u), cycle(n)).valid);
    }
}

TEST(Purity, Examples) {
    SquareMatrix<Rational> half(2);
    half(0, 0) = half(1, 1) = Rational(1, 2);
    EXPECT_EQ(purity(half), Rational(1, 2));
    SquareMatrix<Rational> diag(2);
    diag(0, 0) = Rational(3, 4);
    diag(1, 1) = Rational(1, 4);
    EXPECT_EQ(purity(diag), Rational(5, 8));
    EXPECT_EQ(purity(outer(std::vector<Rational>{Rational(3, 5), Rational(4, 5)})), 1);
}

TEST(Purity, RejectsInvalid) {
    SquareMatrix<Rational> bad(2);
    bad(0, 0) = Rational(3, 2);
    bad(1, 1) = Rational(-1, 2);
    EXPECT_THROW(purity(bad), Error);  // trace 1 but not PSD
    SquareMatrix<double> tr(2);
    tr(0, 0) = 0.7;
    EXPECT_THROW(purity(tr), Error);
    SquareMatrix<double> asym(2);
    asym(0, 0) = asym(1, 1) = 0.5;
    asym(0, 1) = 0.1;
    EXPECT_THROW(purity(asym), Error);
}

TEST(Properties, PurityAtMostOneWithEqualityIffRankOne) {
    std::mt19937_64 rng(71);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const int r = 1 + static_cast<int>(rng() % n);
        Eigen::MatrixXd f(n, r);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < r; ++b) f(a, b) = gauss(rng);
        Eigen::MatrixXd a = f * f.transpose();
        a /= a.trace();
        const double p = purity(from_eigen(a));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        const double second = es.eigenvalues()(n - 2);
        EXPECT_LE(p, 1.0 + 1e-12);
        EXPECT_GT(p, 0.0);
        EXPECT_EQ(std::abs(p - 1.0) < 1e-9, second < 1e-9) << "rank " << r;
        EXPECT_EQ(r == 1, std::abs(p - 1.0) < 1e-9);
    }
}

TEST(Properties, HsOrthogonalityIffRangeOrthogonality) {
    std::mt19937_64 rng(72);
    std::normal_distribution<double> gauss;
    int orthogonal = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 4 + static_cast<int>(rng() % 3);
        Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::NullaryExpr(n, n, [&] {
                                return gauss(rng);
                            })).householderQ();
        const int ra = 1 + static_cast<int>(rng() % 2), rb = 1 + static_cast<int>(rng() % 2);
        const bool split = rng() % 2 == 0;
        Eigen::MatrixXd fa = q.leftCols(ra);
        Eigen::MatrixXd fb = split ? Eigen::MatrixXd(q.rightCols(rb)) : Eigen::MatrixXd(q.leftCols(rb) * 0.6 + q.rightCols(rb) * 0.8);
        // random positive weights inside each range
        // weights are materialized first: a nullary expression would redraw on every access
        Eigen::VectorXd wa(ra), wb(rb);
        for (auto& x : wa) x = 0.1 + std::abs(gauss(rng));
        for (auto& x : wb) x = 0.1 + std::abs(gauss(rng));
        Eigen::MatrixXd a = fa * wa.asDiagonal() * fa.transpose();
        Eigen::MatrixXd b = fb * wb.asDiagonal() * fb.transpose();
        a /= a.trace();
        b /= b.trace();
        const double hs = (a * b).trace();
        auto projector = [](const Eigen::MatrixXd& m) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
            Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m.rows(), m.cols());
            for (Eigen::Index k = 0; k < m.rows(); ++k)
                if (es.eigenvalues()(k) > 1e-9) p += es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose();
            return p;
        };
        const double range = (projector(a) * projector(b)).norm();
        EXPECT_EQ(hs < 1e-9, range < 1e-6) << "hs " << hs << " range " << range;
        orthogonal += hs < 1e-9;
    }
    EXPECT_GT(orthogonal, 20);
    EXPECT_LT(orthogonal, 180);
}

TEST(Purify, PureUmbrellaIsFixedPoint) {
    const auto d = density_from_vector(odd_cycle_umbrella(5));
    const auto p = purify_umbrella(d, cycle(5));
    EXPECT_TRUE(p.degenerate.empty());
    for (std::size_t x = 0; x < d.states.size(); ++x)
        for (std::size_t i = 0; i < d.dim; ++i)
            for (std::size_t j = 0; j < d.dim; ++j) EXPECT_NEAR(p.umbrella.states[x](i, j), d.states[x](i, j), 1e-12);
    EXPECT_NEAR(p.value_after, p.value_before, 1e-12);
}

TEST(Purify, MixingBreaksOrthogonality) {
    auto d = density_from_vector(odd_cycle_umbrella(5));
    for (auto& s : d.states)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) s(i, j) = 0.9 * s(i, j) + (i == j ? 0.1 / 3.0 : 0.0);
    const auto rep = verify_umbrella(d, cycle(5));
    EXPECT_FALSE(rep.valid);
    EXPECT_GT(rep.max_orthogonality_residual, 1e-3);
    EXPECT_THROW(purify_umbrella(d, cycle(5)), Error);
}

TEST(Purify, BlockDiagonalMixedUmbrellaOnTwoEdges) {
    // 2K2: edges {0,1} and {2,3}; states of each edge live in orthogonal planes
    const Graph g = disjoint_union(complete(2), complete(2));
    DensityUmbrella<double> d;
    d.dim = 4;
    d.handle = SquareMatrix<double>(4);
    for (std::size_t i = 0; i < 4; ++i) d.handle(i, i) = 0.25;
    auto block = [](std::size_t off, double a, double b, double c) {
        SquareMatrix<double> m(4);
        m(off, off) = a;
        m(off + 1, off + 1) = b;
        m(off, off + 1) = m(off + 1, off) = c;
        return m;
    };
    d.states = {block(0, 0.75, 0.25, 0.0), block(0, 0.5, 0.5, 0.2), block(2, 0.6, 0.4, -0.1), block(2, 0.5, 0.5, 0.0)};
    ASSERT_TRUE(verify_umbrella(d, g).valid);
    const auto p = purify_umbrella(d, g);
    EXPECT_TRUE(verify_umbrella(p.umbrella, g).valid);
    for (const auto& s : p.umbrella.states) EXPECT_NEAR(purity(s), 1.0, 1e-12);
    ASSERT_EQ(p.degenerate.size(), 1u);  // the maximally mixed block has a tied top eigenvalue
    EXPECT_EQ(p.degenerate[0], 3u);
    EXPECT_NEAR(p.value_before, 4.0, 1e-12);
    EXPECT_GT(p.value_after, 0.0);
}

TEST(Psd, ExactTest) {
    SquareMatrix<Rational> m(3);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(0, 1) = m(1, 0) = 1;  // rank one block, PSD
    EXPECT_TRUE(detail::exact_psd(m));
    m(2, 2) = -1;
    EXPECT_FALSE(detail::exact_psd(m));
    SquareMatrix<Rational> z(2);
    z(0, 1) = z(1, 0) = 1;  // zero diagonal with off-diagonal mass
    EXPECT_FALSE(detail::exact_psd(z));
}

TEST(UmbrellaJson, RoundTripVector) {
    const auto u = odd_cycle_umbrella(7);
    const auto j = umbrella_to_json(u);
    EXPECT_EQ(j["kind"], "vector");
    EXPECT_TRUE(j["handle"][0].is_string());
    const auto back = umbrella_from_json<double>(j);
    ASSERT_TRUE(back.is_vector());
    EXPECT_EQ(back.vector->states, u.states);  // 17 significant digits round-trip exactly
    EXPECT_EQ(back.vector->handle, u.handle);
}

TEST(UmbrellaJson, RoundTripExactAndDensity) {
    const auto u = square_umbrella();
    const auto back = umbrella_from_json<Rational>(umbrella_to_json(u));
    EXPECT_EQ(back.vector->states, u.states);
    EXPECT_EQ(umbrella_to_json(u)["handle"][0], "3/5");
    const auto d = density_from_vector(u);
    const auto db = umbrella_from_json<Rational>(umbrella_to_json(d));
    ASSERT_FALSE(db.is_vector());
    EXPECT_EQ(db.density->states, d.states);
    EXPECT_TRUE(verify_umbrella(*db.density, cycle(4)).valid);
}

TEST(UmbrellaJson, RejectsMalformed) {
    EXPECT_THROW(umbrella_from_json<double>(nlohmann::json::object()), Error);
    auto j = umbrella_to_json(odd_cycle_umbrella(5));
    j["kind"] = "spinor";
    EXPECT_THROW(umbrella_from_json<double>(j), Error);
    j = umbrella_to_json(odd_cycle_umbrella(5));
    j["handle"][0] = "1.0abc";
    EXPECT_THROW(umbrella_from_json<double>(j), Error);
}
