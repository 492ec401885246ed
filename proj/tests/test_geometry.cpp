#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "warpcurv/ambient.hpp"
#include "warpcurv/curvature.hpp"
#include "warpcurv/errors.hpp"

using namespace warpcurv;

namespace {

MetricField metric2(const std::vector<std::string>& vars,
                    const std::string& g11, const std::string& g12,
                    const std::string& g22) {
    return MetricField(vars, {parse(g11, vars), parse(g12, vars),
                              parse(g12, vars), parse(g22, vars)});
}

MetricField sphere2() { return metric2({"t", "p"}, "1", "0", "sin(t)^2"); }

MetricField hyperbolic_half_plane() {
    return metric2({"x", "y"}, "1/(y*y)", "0", "1/(y*y)");
}

MetricField warped_exp() { return metric2({"t", "p"}, "1", "0", "exp(2*t)"); }

Vec pt(std::initializer_list<double> xs) {
    Vec p(static_cast<Eigen::Index>(xs.size()));
    int i = 0;
    for (double x : xs) p[i++] = x;
    return p;
}

/// Random orthogonal matrix via QR of a Gaussian draw.
Mat random_orthogonal(std::mt19937& rng, int n) {
    std::normal_distribution<double> gauss;
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
    return Eigen::HouseholderQR<Mat>(A).householderQ();
}

}  // namespace

TEST_CASE("christoffel: euclidean identity metric vanishes") {
    MetricField m = euclidean_metric(3);
    Tensor3 g = christoffel(m, pt({0.3, -1.2, 2.0}));
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(g(k, i, j) == doctest::Approx(0.0));
}

TEST_CASE("christoffel: unit sphere golden values at theta=pi/3") {
    Tensor3 g = christoffel(sphere2(), pt({M_PI / 3, 0.4}));
    CHECK(g(0, 1, 1) == doctest::Approx(-std::sqrt(3.0) / 4).epsilon(1e-12));
    CHECK(g(1, 0, 1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(g(1, 1, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(g(0, 0, 1) == g(0, 1, 0));
}

TEST_CASE("christoffel: exponential warp golden values at t=0") {
    // g = dt^2 + e^{2t} dp^2: Gamma^t_pp = -f f' = -1, Gamma^p_tp = f'/f = 1.
    Tensor3 g = christoffel(warped_exp(), pt({0.0, 1.0}));
    CHECK(g(0, 1, 1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(g(1, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("christoffel rejects a non-positive-definite metric") {
    MetricField m = metric2({"x", "y"}, "1", "0", "-1");
    CHECK_THROWS_AS(christoffel(m, pt({0.0, 0.0})), ValidationError);
}

TEST_CASE("riemann: euclidean space is flat") {
    CurvatureAtPoint cp = curvature_at(euclidean_metric(3), pt({1.0, 2.0, 3.0}));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    CHECK(cp.rm(i, j, k, l) == doctest::Approx(0.0));
}

TEST_CASE("riemann: unit sphere sign convention and K = 1") {
    const double theta = 1.1;
    CurvatureAtPoint cp = curvature_at(sphere2(), pt({theta, 0.7}));
    const double s2 = std::sin(theta) * std::sin(theta);
    // rm(i,j,k,l) = <R(d_i,d_j)d_k, d_l>; the (t,p,p,t) component is +sin^2.
    CHECK(cp.rm(0, 1, 1, 0) == doctest::Approx(s2).epsilon(1e-10));
    CHECK(cp.rm(0, 1, 0, 1) == doctest::Approx(-s2).epsilon(1e-10));

    Vec X = pt({1.0, 0.0}), Y = pt({0.0, 1.0});
    CHECK(sectional(cp, X, Y) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("riemann: hyperbolic half-plane has K = -1") {
    CurvatureAtPoint cp = curvature_at(hyperbolic_half_plane(), pt({0.0, 1.0}));
    CHECK(sectional(cp, pt({1.0, 0.0}), pt({0.0, 1.0})) ==
          doctest::Approx(-1.0).epsilon(1e-10));
    CurvatureAtPoint cp2 = curvature_at(hyperbolic_half_plane(), pt({1.7, 0.4}));
    CHECK(sectional(cp2, pt({0.3, 1.0}), pt({1.0, -0.2})) ==
          doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("curvature symmetries and first Bianchi at random catalog points") {
    std::mt19937 rng(42);
    struct Case {
        MetricField m;
        Vec lo, hi;
    };
    std::vector<Case> cases;
    cases.push_back({euclidean_metric(3), pt({-2, -2, -2}), pt({2, 2, 2})});
    cases.push_back({sphere2(), pt({0.3, 0.1}), pt({M_PI - 0.3, 6.0})});
    cases.push_back({hyperbolic_half_plane(), pt({-1.0, 0.4}), pt({1.0, 3.0})});
    cases.push_back({warped_exp(), pt({-1.0, 0.0}), pt({1.0, 6.0})});
    cases.push_back({make_clifford(2, 2).metric, pt({0.3, 0.3, 0.3, 0.3}),
                     pt({2.8, 2.8, 2.8, 2.8})});

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& c : cases) {
        const int n = c.m.dim();
        for (int trial = 0; trial < 10; ++trial) {
            Vec p(n);
            for (int i = 0; i < n; ++i)
                p[i] = c.lo[i] + (c.hi[i] - c.lo[i]) * unif(rng);
            CurvatureAtPoint cp = curvature_at(c.m, p);
            double worst = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            const double r = cp.rm(i, j, k, l);
                            worst = std::max(worst, std::abs(r + cp.rm(j, i, k, l)));
                            worst = std::max(worst, std::abs(r + cp.rm(i, j, l, k)));
                            worst = std::max(worst, std::abs(r - cp.rm(k, l, i, j)));
                            worst = std::max(
                                worst, std::abs(r + cp.rm(j, k, i, l) +
                                                cp.rm(k, i, j, l)));
                        }
            CHECK(worst < 1e-8);
            Tensor3 g = christoffel(c.m, p);
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        CHECK(std::abs(g(k, i, j) - g(k, j, i)) < 1e-10);
        }
    }
}

TEST_CASE("sectional curvature is invariant under re-spanning the plane") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    CurvatureAtPoint cp = curvature_at(make_clifford(2, 3).metric,
                                       pt({0.9, 1.1, 0.8, 1.3, 1.0}));
    Vec X = pt({1.0, 0.2, -0.3, 0.5, 0.1});
    Vec Y = pt({-0.2, 0.9, 0.4, -0.1, 0.7});
    const double k0 = sectional(cp, X, Y);
    for (int t = 0; t < 25; ++t) {
        double a, b, c, d;
        do {
            a = unif(rng);
            b = unif(rng);
            c = unif(rng);
            d = unif(rng);
        } while (std::abs(a * d - b * c) < 0.1);
        Vec X2 = a * X + b * Y;
        Vec Y2 = c * X + d * Y;
        CHECK(std::abs(sectional(cp, X2, Y2) - k0) < 1e-9);
    }
}

TEST_CASE("sectional rejects degenerate planes") {
    CurvatureAtPoint cp = curvature_at(euclidean_metric(2), pt({0.0, 0.0}));
    Vec X = pt({1.0, 1.0});
    CHECK_THROWS_AS(sectional(cp, X, 2.0 * X), ValidationError);
}

TEST_CASE("space forms have constant sectional curvature") {
    std::mt19937 rng(8);
    struct Case {
        AmbientSpace a;
        double lo, hi;
    };
    std::vector<Case> cases;
    cases.push_back({make_space_form(3, 1.0), 0.4, 2.2});
    cases.push_back({make_space_form(3, 1.0, SphereChart::Conformal), -0.5, 0.5});
    cases.push_back({make_space_form(3, -1.0), -0.4, 0.4});
    cases.push_back({make_space_form(2, 4.0), 0.3, 1.2});
    std::normal_distribution<double> gauss;
    for (const auto& c : cases) {
        const int n = c.a.dim();
        for (int t = 0; t < 10; ++t) {
            Vec p = test::random_point(rng, n, c.lo, c.hi);
            CurvatureAtPoint cp = curvature_at(c.a.metric, p);
            Vec X(n), Y(n);
            for (int i = 0; i < n; ++i) {
                X[i] = gauss(rng);
                Y[i] = gauss(rng);
            }
            CHECK(std::abs(sectional(cp, X, Y) - c.a.curvature) < 1e-8);
        }
    }
}

TEST_CASE("scalar curvature: pair-sum convention") {
    CHECK(scalar_curvature(euclidean_metric(3), pt({0.1, 0.2, 0.3})) ==
          doctest::Approx(0.0));
    // Unit 2-sphere: one unordered pair, K = 1 (half the trace convention).
    CHECK(scalar_curvature(sphere2(), pt({1.2, 0.5})) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scalar curvature of the Clifford torus is m(m-2)/2") {
    for (auto [m1, m2] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
        AmbientSpace torus = make_clifford(m1, m2);
        const int m = m1 + m2;
        Vec p(m);
        for (int i = 0; i < m; ++i) p[i] = 0.6 + 0.15 * i;
        CHECK(scalar_curvature(torus.metric, p) ==
              doctest::Approx(0.5 * m * (m - 2)).epsilon(1e-8));
    }
}

TEST_CASE("scalar curvature is frame-rotation invariant") {
    std::mt19937 rng(3);
    MetricField m = make_clifford(2, 2).metric;
    Vec p = pt({0.7, 1.2, 0.9, 1.4});
    CurvatureAtPoint cp = curvature_at(m, p);
    const double tau = scalar_curvature(cp);
    Mat frame = gram_schmidt(cp.g, Mat::Identity(4, 4));
    for (int t = 0; t < 10; ++t) {
        Mat rotated = frame * random_orthogonal(rng, 4);
        double tau2 = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                tau2 += sectional(cp, rotated.col(a), rotated.col(b));
        CHECK(std::abs(tau2 - tau) < 1e-8);
    }
}

TEST_CASE("ricci: euclidean zero, unit sphere one") {
    CurvatureAtPoint flat = curvature_at(euclidean_metric(3), pt({0, 0, 0}));
    Vec X = pt({1.0, 0.0, 0.0});
    CHECK(ricci(flat, X) == doctest::Approx(0.0));

    CurvatureAtPoint sph = curvature_at(sphere2(), pt({0.9, 0.2}));
    Vec U = pt({1.0, 0.0});
    CHECK(ricci(sph, U) == doctest::Approx(1.0).epsilon(1e-9));
    Vec V = pt({0.0, 1.0 / std::sin(0.9)});
    CHECK(ricci(sph, V) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ricci requires a unit direction") {
    CurvatureAtPoint cp = curvature_at(euclidean_metric(2), pt({0, 0}));
    CHECK_THROWS_AS(ricci(cp, pt({2.0, 0.0})), ValidationError);
}

TEST_CASE("ricci on the Clifford torus: eigendirections and the Gauss trace") {
    // At a shape-eigenvector direction x e1 the frame-completion sum gives
    // m - 1 - m2/m1; along mixed directions it follows the contracted-Gauss
    // value m - 1 - (m2/m1) x^2 - (m1/m2) y^2.
    std::mt19937 rng(31);
    for (auto [m1, m2] : {std::pair{2, 2}, {2, 3}}) {
        const int m = m1 + m2;
        AmbientSpace torus = make_clifford(m1, m2);
        Vec p(m);
        for (int i = 0; i < m; ++i) p[i] = 0.8 + 0.1 * i;
        CurvatureAtPoint cp = curvature_at(torus.metric, p);
        Mat frame = gram_schmidt(cp.g, Mat::Identity(m, m));
        const Vec e1 = frame.col(0);
        const Vec e2 = frame.col(m1);

        const double a = static_cast<double>(m2) / m1;
        const double b = static_cast<double>(m1) / m2;
        CHECK(ricci(cp, e1) == doctest::Approx(m - 1 - a).epsilon(1e-8));
        CHECK(ricci(cp, e2) == doctest::Approx(m - 1 - b).epsilon(1e-8));

        std::uniform_real_distribution<double> unif(0.0, 2 * M_PI);
        for (int t = 0; t < 8; ++t) {
            const double ang = unif(rng);
            const double x = std::cos(ang), y = std::sin(ang);
            Vec X = x * e1 + y * e2;
            CHECK(ricci(cp, X) ==
                  doctest::Approx(m - 1 - a * x * x - b * y * y).epsilon(1e-8));
        }
    }
}

TEST_CASE("gram_schmidt golden cases") {
    Mat g = Mat::Identity(2, 2);
    Mat frame = gram_schmidt(g, Mat::Identity(2, 2));
    CHECK(frame.isApprox(Mat::Identity(2, 2), 1e-14));

    Mat g2(2, 2);
    g2 << 4, 0, 0, 1;
    Mat seeds(2, 1);
    seeds << 1, 0;
    Mat f2 = gram_schmidt(g2, seeds);
    CHECK(f2(0, 0) == doctest::Approx(0.5));
    CHECK(f2(1, 0) == doctest::Approx(0.0));

    // Sphere chart at the equator: coordinate basis already orthonormal.
    Mat gs = sphere2().value(pt({M_PI / 2, 1.0}));
    Mat f3 = gram_schmidt(gs, Mat::Identity(2, 2));
    CHECK(f3.isApprox(Mat::Identity(2, 2), 1e-12));

    Mat bad(2, 2);
    bad << 1, 1, 2, 2;
    CHECK_THROWS_AS(gram_schmidt(Mat::Identity(2, 2), bad), ValidationError);
}

TEST_CASE("gram_schmidt orthonormality within 1e-10 on random metrics") {
    std::mt19937 rng(77);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 20; ++t) {
        Mat A(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) A(i, j) = gauss(rng);
        Mat g = A * A.transpose() + 0.5 * Mat::Identity(4, 4);
        Mat seeds(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) seeds(i, j) = gauss(rng);
        Mat f = gram_schmidt(g, seeds);
        CHECK(((f.transpose() * g * f) - Mat::Identity(4, 4))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
    }
}

TEST_CASE("paper-sign laplacian golden values") {
    CHECK(laplacian_paper(euclidean_metric(2), parse("3", {"x", "y"}),
                          pt({0.4, 0.5})) == doctest::Approx(0.0));
    // f = x^2 on flat R^2: the analyst's laplacian is +2; the paper's is -2.
    CHECK(laplacian_paper(euclidean_metric(2), parse("x^2", {"x", "y"}),
                          pt({1.3, -0.2})) == doctest::Approx(-2.0).epsilon(1e-10));
    // f = cos(theta) on the unit sphere: +2 cos(theta) in the paper's sign.
    const double theta = 0.8;
    CHECK(laplacian_paper(sphere2(), parse("cos(t)", {"t", "p"}),
                          pt({theta, 0.3})) ==
          doctest::Approx(2.0 * std::cos(theta)).epsilon(1e-9));
}

TEST_CASE("paper laplacian plus divergence-form laplacian is zero") {
    std::mt19937 rng(55);
    std::vector<MetricField> metrics;
    metrics.push_back(sphere2());
    metrics.push_back(hyperbolic_half_plane());
    metrics.push_back(warped_exp());
    std::vector<std::pair<double, double>> boxes = {
        {0.4, 2.6}, {0.4, 2.0}, {-0.8, 0.8}};
    for (std::size_t c = 0; c < metrics.size(); ++c) {
        const auto& m = metrics[c];
        for (int t = 0; t < 8; ++t) {
            Vec p = test::random_point(rng, 2, boxes[c].first, boxes[c].second);
            Expr f = test::random_expr_safe(rng, m.vars(), p, 3);
            const double lap = laplacian_paper(m, f, p);
            const double div = test::divgrad(m, f, p);
            CHECK(std::abs(lap + div) < 1e-8);
        }
    }
}
