#include "warpcurv/chen.hpp"

#include <cmath>
#include <sstream>

#include "warpcurv/errors.hpp"

namespace warpcurv {

SlackReport compute_slacks(const WarpedProduct& wp, const ImmersionMap& imm,
                           const AmbientSpace& ambient, const Vec& p,
                           const Tolerances& tol, const ExtremalOptions& opts) {
    const int n = wp.dim();
    const int n1 = wp.n1();
    const int n2 = wp.n2();
    if (n2 < 1)
        throw ValidationError("slack evaluation needs a fiber of dimension >= 1");

    SlackReport out;
    out.p = p;

    ImmersionPointData d = immersion_at(imm, p);
    out.isometry_residual = d.isometry_residual;
    out.H2 = d.H2;
    SffNorms norms = sff_norms(d, n1);
    out.h_norm2 = norms.h_norm2;
    out.delta_f_over_f = wp.delta_f_over_f(p);

    // Restricted inf/sup of ambient sectional curvature over planes tangent
    // to the immersed submanifold (Eqs. for the bounds evaluate Kbar only on
    // such planes). Full tangent space of a catalog ambient short-circuits.
    const bool full_catalog =
        ambient.has_catalog_extremes() && n == ambient.dim();
    CurvatureAtPoint cp_amb = curvature_at(ambient.metric, d.q);
    if (full_catalog) {
        out.inf_K = ambient.catalog_inf();
        out.sup_K = ambient.catalog_sup();
    } else {
        ExtremalK ext = extremal_numeric(cp_amb, d.tangent_ambient, opts);
        out.inf_K = ext.inf_val;
        out.sup_K = ext.sup_val;
    }

    const double nn = static_cast<double>(n);
    out.upper_slack = nn * nn / (4.0 * n2) * out.H2 + n1 * out.sup_K -
                      out.delta_f_over_f;
    out.lower_slack = out.delta_f_over_f -
                      n1 * nn * nn / (2.0 * (nn - 1.0)) * out.H2 +
                      0.5 * n1 * out.h_norm2 - n1 * out.inf_K;

    // Equality-case diagnostics for the upper bound.
    out.diagnostics.mixed_norm = std::sqrt(norms.mixed_norm2);
    out.diagnostics.mixed_tg = out.diagnostics.mixed_norm < tol.equality;
    out.diagnostics.trace_gap =
        (norms.tr_h1 - norms.tr_h2).cwiseAbs().maxCoeff();
    out.diagnostics.traces_equal = out.diagnostics.trace_gap < tol.equality;
    double plane_gap = 0.0;
    for (int i = 0; i < n1; ++i)
        for (int s = n1; s < n; ++s) {
            const double kbar = sectional(cp_amb, d.tangent_ambient.col(i),
                                          d.tangent_ambient.col(s));
            plane_gap = std::max(plane_gap, std::abs(kbar - out.sup_K));
        }
    out.diagnostics.plane_gap = plane_gap;
    out.diagnostics.mixed_planes_extremal = plane_gap < tol.equality;

    if (ambient.kind == AmbientSpace::Kind::ProductSpaceForms ||
        ambient.kind == AmbientSpace::Kind::Clifford) {
        out.has_corollaries = true;
        out.corollary_upper_slack = nn * nn / (4.0 * n2) * out.H2 +
                                    n1 * ambient.c_max - out.delta_f_over_f;
        out.corollary_lower_slack =
            out.delta_f_over_f - n1 * nn * nn / (2.0 * (nn - 1.0)) * out.H2 +
            0.5 * n1 * out.h_norm2 - n1 * ambient.c_min;
    }
    return out;
}

double chen_space_form_upper_slack(int n1, int n2, double H2, double delta,
                                   double c) {
    const double n = static_cast<double>(n1 + n2);
    return n * n / (4.0 * n2) * H2 + n1 * c - delta;
}

LemmaResult lemma_check(const std::vector<double>& a, double c) {
    const std::size_t n = a.size();
    if (n < 2) throw ValidationError("lemma_check: need at least two entries");

    LemmaResult out;
    out.c = c;
    double sum = 0.0, sum2 = 0.0;
    for (double v : a) {
        sum += v;
        sum2 += v * v;
    }
    const double lhs = sum * sum;
    const double rhs = (static_cast<double>(n) - 1.0) * (sum2 + c);
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    out.holds_hypothesis = std::abs(lhs - rhs) <= 1e-10 * scale;
    if (!out.holds_hypothesis) return out;  // conclusion not applicable

    out.applicable = true;
    out.two_a1a2 = 2.0 * a[0] * a[1];
    out.holds_conclusion = out.two_a1a2 >= c - 1e-10;
    out.is_equality = std::abs(out.two_a1a2 - c) <= 1e-9 * scale;

    bool cond = true;
    const double head = a[0] + a[1];
    for (std::size_t i = 2; i < n; ++i)
        cond = cond && std::abs(a[i] - head) <= 1e-9 * scale;
    // For n = 2 the chain a_3 = ... = a_n is empty and the condition is
    // vacuously true (the hypothesis then forces c = 2 a1 a2).
    out.condition_holds = cond;
    return out;
}

NonexistenceReport nonexistence_witness(const WarpedProduct& wp,
                                        const ImmersionMap& imm,
                                        const AmbientSpace& ambient,
                                        const std::vector<Vec>& grid,
                                        const Tolerances& tol) {
    if (ambient.kind != AmbientSpace::Kind::ProductSpaceForms &&
        ambient.kind != AmbientSpace::Kind::Clifford)
        throw ValidationError(
            "nonexistence check applies to product-of-space-form or Clifford "
            "ambients");
    if (grid.empty())
        throw ValidationError("nonexistence check needs at least one point");

    NonexistenceReport out;
    out.n1_cbar = wp.n1() * ambient.c_max;
    out.max_delta = -std::numeric_limits<double>::infinity();

    // Minimality first: H^2 < 1e-10 at every grid point.
    for (const Vec& p : grid) {
        ImmersionPointData d = immersion_at(imm, p);
        const double habs = std::sqrt(d.H2);
        if (habs > out.max_abs_H) {
            out.max_abs_H = habs;
            out.worst_point = p;
        }
        if (d.H2 >= 1e-10) {
            std::ostringstream os;
            os << "scenario is not minimal: |H| = " << habs << " at ["
               << p.transpose() << "]";
            throw ValidationError(os.str());
        }
    }

    out.bound_ok = true;
    for (const Vec& p : grid) {
        const double delta = wp.delta_f_over_f(p);
        if (delta > out.max_delta) {
            out.max_delta = delta;
            out.worst_point = p;
        }
        if (delta > out.n1_cbar + tol.slack) out.bound_ok = false;
    }
    return out;
}

}  // namespace warpcurv
