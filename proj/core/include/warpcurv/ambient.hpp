#pragma once

#include <optional>

#include "warpcurv/extremal.hpp"
#include "warpcurv/immersion.hpp"
#include "warpcurv/metric.hpp"
#include "warpcurv/warped.hpp"

namespace warpcurv {

/// Chart style for constant-curvature factors. Spheres default to
/// hyperspherical angles; the conformal (stereographic) chart
/// g_ij = delta_ij / (1 + c|x|^2/4)^2 covers any curvature sign and is the
/// chart the Clifford embedding targets, since the torus never meets the
/// projection pole.
enum class SphereChart { Polar, Conformal };

class AmbientSpace {
public:
    enum class Kind { Euclidean, SpaceForm, ProductSpaceForms, Clifford };

    Kind kind;
    MetricField metric;

    // Attainable sectional-curvature set, when the catalog knows it exactly.
    std::optional<std::vector<double>> exact_K_values;

    // Section-4 constants c := min{c1,c2,0}, cbar := max{c1,c2,0} for the
    // product-like kinds; for a space form both equal its curvature.
    double c_min = 0.0;
    double c_max = 0.0;

    // Kind-specific parameters.
    double curvature = 0.0;          // SpaceForm
    int dim1 = 0, dim2 = 0;          // ProductSpaceForms factor dims
    double c1 = 0.0, c2 = 0.0;       // ProductSpaceForms factor curvatures
    int m1 = 0, m2 = 0;              // Clifford

    int dim() const { return metric.dim(); }
    bool has_catalog_extremes() const { return exact_K_values.has_value(); }
    double catalog_inf() const;
    double catalog_sup() const;
};

AmbientSpace make_euclidean(int dim);
AmbientSpace make_space_form(int dim, double curvature,
                             SphereChart chart = SphereChart::Polar);
AmbientSpace make_product_space_forms(int dim1, double c1, int dim2, double c2);
/// Clifford torus intrinsic chart: product of the round-sphere polar charts
/// of radii sqrt(m1/m), sqrt(m2/m). Requires m1, m2 >= 2 (so m >= 4).
AmbientSpace make_clifford(int m1, int m2);

/// Round metric of S^d(radius) in hyperspherical angles t1..td:
/// g = r^2 diag(1, sin^2 t1, sin^2 t1 sin^2 t2, ...).
MetricField sphere_polar_metric(int d, double radius,
                                const std::string& var_prefix = "t");

/// Chart components of the unit hyperspherical parameterization of
/// S^d in R^{d+1} over variables var_base+offset .. (d entries in the
/// enclosing chart's variable list).
std::vector<Expr> unit_sphere_coords(int d, int var_offset,
                                     const std::vector<std::string>& vars);

/// The Clifford torus embedding into the conformal chart of S^{m+1}(1):
/// position (r1 U(u), r2 V(v)) in R^{m+2}, then stereographic projection
/// x_i = 2 X_i / (1 + X_{m+2}). The torus stays away from the pole since
/// |X_{m+2}| <= r2 < 1.
struct CliffordEmbedding {
    MetricField intrinsic;         // product chart, m variables
    AmbientSpace sphere;           // S^{m+1}(1), conformal chart
    std::vector<Expr> phi;         // m+1 components
    Box chart_box;                 // angles in [0.15, pi-0.15]
};
CliffordEmbedding clifford_embedding(int m1, int m2);

/// Closed-form extrinsic record of the Clifford torus in S^{m+1}(1).
struct CliffordFacts {
    int m1 = 0, m2 = 0, m = 0;
    std::vector<double> principal;  // sorted multiset, m values
    double h_norm2 = 0.0;           // = m
    double H2 = 0.0;                // = 0
    double tau = 0.0;               // = m(m-2)/2
    std::vector<double> K_values;   // {0, m/m1, m/m2}
};
CliffordFacts clifford_facts(int m1, int m2);

/// The same record recomputed numerically from the embedding, with the worst
/// deviation from the closed forms across `samples` deterministic points.
struct CliffordNumeric {
    CliffordFacts computed;
    double principal_dev = 0.0;  // multiset comparison, orientation resolved
    double h_norm2_dev = 0.0;
    double H2_dev = 0.0;
    double tau_dev = 0.0;
    double K_value_dev = 0.0;    // attained coordinate-plane curvatures
    double gauss_residual = 0.0;
    double isometry_residual = 0.0;
};
CliffordNumeric clifford_extrinsic(int m1, int m2, int samples = 5,
                                   unsigned seed = 7);

/// Eq-style Ricci record for the Clifford torus direction x e1 + y e2 with
/// A e1 = sqrt(m2/m1) e1, A e2 = -sqrt(m1/m2) e2, x^2 + y^2 = 1.
struct RicciBound {
    double ric = 0.0;        // formula value
    double bound = 0.0;      // m - 1 - (m2/m1 + m1/m2)
    bool is_equality = false;
};
RicciBound ricci_bound_check(int m1, int m2, double x, double y);

/// inf/sup of ambient sectional curvature over 2-planes inside the span of
/// `subspace` columns at chart point p. When the subspace is the full tangent
/// space of a catalog ambient the exact catalog extremes are returned;
/// otherwise the numeric Stiefel search runs (the restricted case of the
/// theorems' inf/sup, where catalog values are only envelopes).
ExtremalK extremal_sectional(const AmbientSpace& ambient, const Vec& p,
                             const Mat& subspace,
                             const ExtremalOptions& opts = {});

}  // namespace warpcurv
