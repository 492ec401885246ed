#pragma once

#include <optional>

#include "warpcurv/curvature.hpp"
#include "warpcurv/metric.hpp"

namespace warpcurv {

/// Per-coordinate closed interval chart box.
struct Box {
    std::vector<std::pair<double, double>> ranges;

    int dim() const { return static_cast<int>(ranges.size()); }
    bool contains(const Vec& p, double slack = 0.0) const;
    Vec center() const;
};

/// Warped product metric g = g_B + f^2 g_F on the product chart. Base
/// coordinates come first; off-diagonal blocks are exact zeros by
/// construction.
class WarpedProduct {
public:
    /// Builds the total metric and samples f on a 16^n1 grid over `base_box`
    /// to reject nonpositive warping functions at load time.
    static WarpedProduct build(MetricField base, MetricField fiber, Expr warp,
                               const Box& base_box);

    int n1() const noexcept { return n1_; }
    int n2() const noexcept { return n2_; }
    int dim() const noexcept { return n1_ + n2_; }
    const MetricField& base() const noexcept { return base_; }
    const MetricField& fiber() const noexcept { return fiber_; }
    const MetricField& total() const noexcept { return total_; }
    /// Warping function over the base variables only.
    const Expr& warp() const noexcept { return warp_; }
    /// Warping function reinterpreted over the total variable list (same
    /// indices; base coordinates lead).
    const Expr& warp_total() const noexcept { return warp_; }

    double warp_value(const Vec& base_point) const;

    /// Splitting-respecting orthonormal frame at p: base coordinate seeds
    /// first, then fiber seeds, so columns 0..n1-1 span D1 and the rest D2.
    Mat split_frame(const Vec& p) const;

    /// || grad_X Y - (X ln f) Y ||_g for X in D1, Y in D2 (constant-component
    /// extensions), from the Christoffel symbols of the total metric.
    double warp_connection_residual(const Vec& p, const Vec& X, const Vec& Y) const;

    /// (1/f) sum_{i<=n1} ((grad_{e_i} e_i) f - e_i^2 f) over the split frame.
    double delta_f_over_f(const Vec& p) const;

    /// Mixed-plane curvature sum sum_{i<=n1} K(e_i ^ e_j) for a fiber frame
    /// index j (0-based within the fiber block). Equals delta_f_over_f for
    /// every j by the warped-product identity; exposed for tests and reports.
    double mixed_plane_sum(const Vec& p, int fiber_index) const;

private:
    MetricField base_, fiber_, total_;
    Expr warp_;
    int n1_ = 0, n2_ = 0;
};

}  // namespace warpcurv
