#pragma once

#include "warpcurv/curvature.hpp"
#include "warpcurv/metric.hpp"

namespace warpcurv {

/// Isometric immersion phi: (M, g) -> (Mbar, gbar) given as closed-form chart
/// components. The domain carries an optional D1/D2 split (base directions
/// first); n1 = dim when there is no split to speak of.
class ImmersionMap {
public:
    ImmersionMap(MetricField domain, int n1, MetricField ambient,
                 std::vector<Expr> phi);

    int n() const noexcept { return domain_.dim(); }
    int n1() const noexcept { return n1_; }
    int n2() const noexcept { return domain_.dim() - n1_; }
    int m() const noexcept { return ambient_.dim(); }
    const MetricField& domain() const noexcept { return domain_; }
    const MetricField& ambient() const noexcept { return ambient_; }
    const std::vector<Expr>& phi() const noexcept { return phi_; }

    /// Pullback-vs-domain metric residual at p (max abs entry of
    /// J^T gbar J - g).
    double isometry_residual(const Vec& p) const;

    Vec map_point(const Vec& p) const;

private:
    MetricField domain_;
    int n1_;
    MetricField ambient_;
    std::vector<Expr> phi_;
};

/// Adapted frame and second fundamental form at one point.
///
/// tangent_domain columns are chart components of the orthonormal tangent
/// frame e_1..e_n (D1 block first); tangent_ambient = J * tangent_domain.
/// normal columns are gbar-orthonormal and orthogonal to the tangent image;
/// when ||H|| > 1e-10 the first normal is rotated onto the mean curvature
/// vector (two-phase construction), otherwise the provisional Gram-Schmidt
/// frame is kept.
struct ImmersionPointData {
    Vec p;                   // domain chart point
    Vec q;                   // ambient chart point phi(p)
    Mat J;                   // m x n Jacobian of phi
    double isometry_residual = 0.0;
    Mat g;                   // domain metric value at p
    Mat gbar;                // ambient metric value at q
    Mat tangent_domain;      // n x n
    Mat tangent_ambient;     // m x n
    Mat normal;              // m x (m-n)
    bool mean_aligned = false;
    std::vector<Mat> h;      // per normal index r: n x n, frame components
    Vec H;                   // mean curvature components per normal index
    double H2 = 0.0;
};

/// Evaluate frames and the second fundamental form at p. Throws
/// ValidationError when the isometry residual exceeds 1e-8 or the Jacobian is
/// rank deficient; a scenario that violates the isometry contract is
/// rejected, never silently evaluated.
ImmersionPointData immersion_at(const ImmersionMap& imm, const Vec& p);

/// Norms and traces of h split along D1/D2.
struct SffNorms {
    double h_norm2 = 0.0;     // sum over r,i,j of (h^r_ij)^2
    Vec tr_h1, tr_h2;         // per normal index
    double mixed_norm2 = 0.0; // sum over r, i<=n1<s of (h^r_is)^2
};
SffNorms sff_norms(const ImmersionPointData& d, int n1);

/// h vanishes on all (D1, D2) pairs up to tol.
bool mixed_tg(const ImmersionPointData& d, int n1, double tol);

/// Gauss-equation diagnostics at a point.
struct GaussCheck {
    double max_residual = 0.0;         // max over frame 4-tuples
    double contracted_residual = 0.0;  // sum K_bar - (2 tau + ||h||^2 - n^2 H^2)
    double tau = 0.0;                  // domain scalar curvature (pair sum)
    double sum_kbar = 0.0;             // sum_{a != b} Kbar(e_a ^ e_b)
};
GaussCheck gauss_residual(const ImmersionMap& imm, const ImmersionPointData& d);

}  // namespace warpcurv
