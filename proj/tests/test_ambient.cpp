#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "warpcurv/ambient.hpp"
#include "warpcurv/errors.hpp"

using namespace warpcurv;

TEST_CASE("euclidean catalog") {
    AmbientSpace a = make_euclidean(3);
    CHECK(a.dim() == 3);
    CHECK(a.catalog_inf() == 0.0);
    CHECK(a.catalog_sup() == 0.0);
    Vec p = Vec::Zero(3);
    CHECK(a.metric.value(p).isApprox(Mat::Identity(3, 3)));
}

TEST_CASE("clifford (2,2): radii and curvature set") {
    AmbientSpace a = make_clifford(2, 2);
    CHECK(a.dim() == 4);
    REQUIRE(a.exact_K_values.has_value());
    CHECK((*a.exact_K_values)[0] == 0.0);
    CHECK((*a.exact_K_values)[1] == doctest::Approx(2.0));
    CHECK((*a.exact_K_values)[2] == doctest::Approx(2.0));
    // Factor metric g_11 = r1^2 = m1/m = 1/2.
    Vec p(4);
    p << 0.7, 0.8, 0.9, 1.0;
    Mat g = a.metric.value(p);
    CHECK(g(0, 0) == doctest::Approx(0.5));
    CHECK(g(2, 2) == doctest::Approx(0.5));
}

TEST_CASE("clifford dimension constraints") {
    CHECK_THROWS_AS(make_clifford(1, 3), ValidationError);
    CHECK_THROWS_AS(make_clifford(2, 1), ValidationError);
    CHECK_THROWS_AS(make_clifford(1, 1), ValidationError);
}

TEST_CASE("product of space forms: curvature set and section-4 constants") {
    AmbientSpace a = make_product_space_forms(2, 1.0, 2, -1.0);
    REQUIRE(a.exact_K_values.has_value());
    std::vector<double> ks = *a.exact_K_values;
    std::sort(ks.begin(), ks.end());
    CHECK(ks == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(a.c_min == -1.0);
    CHECK(a.c_max == 1.0);
    CHECK(a.dim() == 4);
}

TEST_CASE("one-dimensional factors must be flat") {
    CHECK_THROWS_AS(make_product_space_forms(1, 2.0, 2, 0.0), ValidationError);
    AmbientSpace ok = make_product_space_forms(1, 0.0, 2, 3.0);
    CHECK(ok.c_max == 3.0);
}

TEST_CASE("clifford closed-form facts") {
    CliffordFacts f22 = clifford_facts(2, 2);
    CHECK(f22.h_norm2 == 4.0);
    CHECK(f22.tau == 4.0);
    CHECK(f22.H2 == 0.0);
    std::vector<double> want22 = {-1.0, -1.0, 1.0, 1.0};
    for (std::size_t i = 0; i < want22.size(); ++i)
        CHECK(f22.principal[i] == doctest::Approx(want22[i]));

    CliffordFacts f23 = clifford_facts(2, 3);
    CHECK(f23.h_norm2 == 5.0);
    CHECK(f23.tau == 7.5);
    const double lam = std::sqrt(1.5), mu = -std::sqrt(2.0 / 3.0);
    int nlam = 0, nmu = 0;
    for (double v : f23.principal) {
        if (std::abs(v - lam) < 1e-12) ++nlam;
        if (std::abs(v - mu) < 1e-12) ++nmu;
    }
    CHECK(nlam == 2);
    CHECK(nmu == 3);
    // Minimality: the trace of the shape operator vanishes.
    double trace = 0.0;
    for (double v : f23.principal) trace += v;
    CHECK(trace == doctest::Approx(0.0));
}

TEST_CASE("clifford embedding is isometric and extrinsically correct") {
    for (auto [m1, m2] : {std::pair{2, 2}, {2, 3}}) {
        CliffordNumeric num = clifford_extrinsic(m1, m2, /*samples=*/3);
        CHECK(num.isometry_residual < 1e-8);
        CHECK(num.principal_dev < 1e-6);
        CHECK(num.h_norm2_dev < 1e-6);
        CHECK(num.H2_dev < 1e-10);
        CHECK(num.tau_dev < 1e-6);
        CHECK(num.K_value_dev < 1e-6);
        CHECK(num.gauss_residual < 1e-7);
    }
}

TEST_CASE("ricci formula record: worked examples") {
    // (2,2) at x = y = 1/sqrt(2): value 1 equals the bound.
    RicciBound r1 = ricci_bound_check(2, 2, 1.0 / std::sqrt(2.0),
                                      1.0 / std::sqrt(2.0));
    CHECK(r1.ric == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r1.bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r1.is_equality);

    // (2,2) at x = 1: value 2, strict.
    RicciBound r2 = ricci_bound_check(2, 2, 1.0, 0.0);
    CHECK(r2.ric == doctest::Approx(2.0));
    CHECK_FALSE(r2.is_equality);

    // (2,3) at the equality point x^2 = 3/5: value 11/6.
    RicciBound r3 = ricci_bound_check(2, 3, std::sqrt(3.0 / 5.0),
                                      std::sqrt(2.0 / 5.0));
    CHECK(r3.ric == doctest::Approx(11.0 / 6.0).epsilon(1e-12));
    CHECK(r3.is_equality);

    CHECK_THROWS_AS(ricci_bound_check(2, 2, 1.0, 1.0), ValidationError);
}

TEST_CASE("ricci formula bound holds on the circle with equality only at the stated points") {
    std::mt19937 rng(64);
    std::uniform_real_distribution<double> unif(0.0, 2 * M_PI);
    for (auto [m1, m2] : {std::pair{2, 2}, {2, 3}}) {
        const int m = m1 + m2;
        const double xeq2 = static_cast<double>(m2) / m;
        for (int t = 0; t < 100; ++t) {
            const double ang = unif(rng);
            const double x = std::cos(ang), y = std::sin(ang);
            RicciBound r = ricci_bound_check(m1, m2, x, y);
            CHECK(r.ric >= r.bound - 1e-12);
            const bool at_eq_point = std::abs(x * x - xeq2) < 1e-9;
            CHECK(r.is_equality == at_eq_point);
        }
        // Exactly at the stated equality points, all four sign choices.
        for (double sx : {1.0, -1.0})
            for (double sy : {1.0, -1.0}) {
                RicciBound r = ricci_bound_check(
                    m1, m2, sx * std::sqrt(xeq2),
                    sy * std::sqrt(1.0 - xeq2));
                CHECK(r.is_equality);
            }
    }
}

TEST_CASE("extremal_sectional: catalog short-circuit on full tangent spaces") {
    AmbientSpace sph = make_space_form(3, 0.25);
    Vec p(3);
    p << 1.0, 1.1, 1.2;
    ExtremalK e = extremal_sectional(sph, p, Mat::Identity(3, 3));
    CHECK(e.method == ExtremalK::Method::ExactCatalog);
    CHECK(e.inf_val == doctest::Approx(0.25));
    CHECK(e.sup_val == doctest::Approx(0.25));

    AmbientSpace cl = make_clifford(2, 3);
    Vec q(5);
    q << 0.8, 0.9, 1.0, 1.1, 1.2;
    ExtremalK ec = extremal_sectional(cl, q, Mat::Identity(5, 5));
    CHECK(ec.inf_val == doctest::Approx(0.0));
    CHECK(ec.sup_val == doctest::Approx(2.5));
}

TEST_CASE("extremal_sectional rejects tiny subspaces") {
    AmbientSpace a = make_euclidean(3);
    Mat one(3, 1);
    one << 1, 0, 0;
    CHECK_THROWS_AS(extremal_sectional(a, Vec::Zero(3), one), ValidationError);
}
