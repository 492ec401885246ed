#pragma once

#include "warpcurv/ambient.hpp"
#include "warpcurv/immersion.hpp"
#include "warpcurv/warped.hpp"

namespace warpcurv {

/// Tolerance ladder, fixed in one place: hyper-dual arithmetic noise 1e-12,
/// geometric residuals 1e-8, inequality slacks 1e-7, equality-case detection
/// 1e-5.
struct Tolerances {
    double arithmetic = 1e-12;
    double geometric = 1e-8;
    double slack = 1e-7;
    double equality = 1e-5;
};

/// Equality-case diagnostics of the upper bound: the immersion is mixed
/// totally geodesic, tr h1 = tr h2 componentwise over normal indices, and
/// every mixed plane attains sup Kbar.
struct EqualityDiagnostics {
    bool mixed_tg = false;
    bool traces_equal = false;
    bool mixed_planes_extremal = false;
    double mixed_norm = 0.0;   // ||h|D1 x D2||
    double trace_gap = 0.0;    // max_r |tr h1^r - tr h2^r|
    double plane_gap = 0.0;    // max mixed-plane |Kbar - sup Kbar|
};

/// Per-point record of every quantity entering the two bounds.
///
/// upper_slack = n^2/(4 n2) H^2 + n1 sup Kbar - lap f / f
/// lower_slack = lap f / f - n1 n^2/(2(n-1)) H^2 + (n1/2) ||h||^2 - n1 inf Kbar
/// with inf/sup Kbar restricted to 2-planes inside the immersed tangent
/// space. Both slacks are nonnegative (up to the slack tolerance) for every
/// valid scenario; a larger violation signals an engine bug or an invalid
/// scenario.
struct SlackReport {
    Vec p;
    double delta_f_over_f = 0.0;
    double H2 = 0.0;
    double h_norm2 = 0.0;
    double inf_K = 0.0;   // restricted to the immersed tangent planes
    double sup_K = 0.0;
    double upper_slack = 0.0;
    double lower_slack = 0.0;
    EqualityDiagnostics diagnostics;
    // Section-4 weakenings, present when the ambient is a product of space
    // forms or a Clifford torus; each dominates the matching theorem slack.
    bool has_corollaries = false;
    double corollary_upper_slack = 0.0;
    double corollary_lower_slack = 0.0;
    double isometry_residual = 0.0;
};

/// Evaluate both bounds and the diagnostics at a chart point.
SlackReport compute_slacks(const WarpedProduct& wp, const ImmersionMap& imm,
                           const AmbientSpace& ambient, const Vec& p,
                           const Tolerances& tol = {},
                           const ExtremalOptions& opts = {});

/// Chen's space-form bound slack with a literal constant c:
/// n^2/(4 n2) H^2 + n1 c - delta. With a constant-curvature ambient the
/// restricted upper bound reduces to this expression.
double chen_space_form_upper_slack(int n1, int n2, double H2, double delta,
                                   double c);

/// The quadratic lemma: if (sum a_i)^2 = (n-1)(sum a_i^2 + c) then
/// 2 a_1 a_2 >= c, with equality iff a_1 + a_2 = a_3 = ... = a_n.
struct LemmaResult {
    bool holds_hypothesis = false;
    bool applicable = false;       // conclusion evaluated only when true
    bool holds_conclusion = false;
    bool is_equality = false;      // |2 a1 a2 - c| within tolerance
    bool condition_holds = false;  // a1 + a2 = a3 = ... = a_n within tolerance
    double two_a1a2 = 0.0;
    double c = 0.0;
};
LemmaResult lemma_check(const std::vector<double>& a, double c);

/// Contrapositive check of the nonexistence statements: a minimal immersion
/// into a product of space forms (or Clifford torus) must satisfy
/// lap f / f <= n1 cbar at every grid point. Throws ValidationError (with the
/// worst |H| location) when the scenario is not minimal.
struct NonexistenceReport {
    bool bound_ok = false;
    double n1_cbar = 0.0;
    double max_delta = 0.0;   // max of lap f / f over the grid
    Vec worst_point;
    double max_abs_H = 0.0;   // minimality certificate
};
NonexistenceReport nonexistence_witness(const WarpedProduct& wp,
                                        const ImmersionMap& imm,
                                        const AmbientSpace& ambient,
                                        const std::vector<Vec>& grid,
                                        const Tolerances& tol = {});

}  // namespace warpcurv
