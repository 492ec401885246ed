#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "warpcurv/ambient.hpp"
#include "warpcurv/extremal.hpp"

using namespace warpcurv;

namespace {

Mat random_subspace(std::mt19937& rng, int n, int d) {
    std::normal_distribution<double> gauss;
    Mat B(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) B(i, j) = gauss(rng);
    return B;
}

}  // namespace

TEST_CASE("numeric search recovers catalog extremes on full tangent spaces") {
    std::mt19937 rng(1001);
    struct Case {
        AmbientSpace a;
        double lo, hi;
    };
    std::vector<Case> cases;
    cases.push_back({make_space_form(3, 1.0), 0.5, 2.0});
    cases.push_back({make_space_form(3, -1.0), -0.4, 0.4});
    cases.push_back({make_clifford(2, 2), 0.5, 2.5});
    cases.push_back({make_product_space_forms(2, 1.0, 2, -1.0), 0.4, 1.2});
    for (const auto& c : cases) {
        const int n = c.a.dim();
        for (int t = 0; t < 10; ++t) {
            Vec p = test::random_point(rng, n, c.lo, c.hi);
            // The product-of-space-forms chart mixes polar (positive factor)
            // and conformal (negative factor) coordinates; both are fine on
            // this box.
            CurvatureAtPoint cp = curvature_at(c.a.metric, p);
            ExtremalK e = extremal_numeric(cp, Mat::Identity(n, n));
            CHECK(std::abs(e.inf_val - c.a.catalog_inf()) < 1e-6);
            CHECK(std::abs(e.sup_val - c.a.catalog_sup()) < 1e-6);
            CHECK(e.inf_val <= e.sup_val);
        }
    }
}

TEST_CASE("catalog envelope sandwich on random subspaces") {
    std::mt19937 rng(1002);
    std::vector<AmbientSpace> ambients;
    ambients.push_back(make_clifford(2, 2));
    ambients.push_back(make_clifford(2, 3));
    ambients.push_back(make_product_space_forms(2, 1.0, 2, -1.0));
    for (const auto& a : ambients) {
        const int n = a.dim();
        for (int t = 0; t < 6; ++t) {
            Vec p = test::random_point(rng, n, 0.5, 1.2);
            CurvatureAtPoint cp = curvature_at(a.metric, p);
            for (int d = 2; d <= 3; ++d) {
                Mat B = random_subspace(rng, n, d);
                ExtremalK e = extremal_numeric(cp, B);
                CHECK(e.inf_val >= a.catalog_inf() - 1e-8);
                CHECK(e.sup_val <= a.catalog_sup() + 1e-8);
                CHECK(e.inf_val <= e.sup_val + 1e-12);
            }
        }
    }
}

TEST_CASE("two-dimensional subspaces reduce to a single plane") {
    AmbientSpace a = make_clifford(2, 2);
    Vec p(4);
    p << 0.9, 1.0, 1.1, 1.2;
    CurvatureAtPoint cp = curvature_at(a.metric, p);
    Mat B(4, 2);
    B.setZero();
    B(0, 0) = 1.0;  // factor-1 direction
    B(2, 1) = 1.0;  // factor-2 direction: mixed plane, K = 0
    ExtremalK e = extremal_numeric(cp, B);
    CHECK(e.inf_val == doctest::Approx(e.sup_val));
    CHECK(e.inf_val == doctest::Approx(0.0).epsilon(1e-10));

    Mat B2(4, 2);
    B2.setZero();
    B2(0, 0) = 1.0;
    B2(1, 1) = 1.0;  // factor-1 plane, K = m/m1 = 2
    ExtremalK e2 = extremal_numeric(cp, B2);
    CHECK(e2.sup_val == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("argmin/argmax planes attain the reported extremes") {
    std::mt19937 rng(1003);
    AmbientSpace a = make_clifford(2, 3);
    Vec p = test::random_point(rng, 5, 0.6, 1.3);
    CurvatureAtPoint cp = curvature_at(a.metric, p);
    Mat B = random_subspace(rng, 5, 4);
    ExtremalK e = extremal_numeric(cp, B);
    CHECK(sectional(cp, e.argmin.col(0), e.argmin.col(1)) ==
          doctest::Approx(e.inf_val).epsilon(1e-9));
    CHECK(sectional(cp, e.argmax.col(0), e.argmax.col(1)) ==
          doctest::Approx(e.sup_val).epsilon(1e-9));
}

TEST_CASE("results are deterministic for a fixed seed") {
    AmbientSpace a = make_clifford(2, 2);
    Vec p(4);
    p << 0.7, 0.9, 1.1, 1.3;
    CurvatureAtPoint cp = curvature_at(a.metric, p);
    std::mt19937 rng(1004);
    Mat B = random_subspace(rng, 4, 3);
    ExtremalOptions opts;
    ExtremalK e1 = extremal_numeric(cp, B, opts);
    ExtremalK e2 = extremal_numeric(cp, B, opts);
    CHECK(e1.inf_val == e2.inf_val);
    CHECK(e1.sup_val == e2.sup_val);
}
