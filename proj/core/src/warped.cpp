#include "warpcurv/warped.hpp"

#include <cmath>
#include <sstream>

#include "warpcurv/errors.hpp"

namespace warpcurv {

bool Box::contains(const Vec& p, double slack) const {
    if (p.size() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        const auto& [lo, hi] = ranges[static_cast<std::size_t>(i)];
        if (p[i] < lo - slack || p[i] > hi + slack) return false;
    }
    return true;
}

Vec Box::center() const {
    Vec c(dim());
    for (int i = 0; i < dim(); ++i)
        c[i] = 0.5 * (ranges[static_cast<std::size_t>(i)].first +
                      ranges[static_cast<std::size_t>(i)].second);
    return c;
}

WarpedProduct WarpedProduct::build(MetricField base, MetricField fiber,
                                   Expr warp, const Box& base_box) {
    const int n1 = base.dim();
    const int n2 = fiber.dim();
    if (base_box.dim() != n1)
        throw ValidationError("warped product: base box dimension mismatch");
    for (int v : warp.free_vars(n1 + n2))
        if (v >= n1)
            throw ValidationError(
                "warping function may only reference base coordinates");

    // f > 0 sampled on a 16^n1 grid (the warped-product definition requires a
    // positive warping function).
    {
        const int steps = 16;
        std::vector<int> idx(static_cast<std::size_t>(n1), 0);
        std::vector<double> env(static_cast<std::size_t>(n1), 0.0);
        for (;;) {
            for (int d = 0; d < n1; ++d) {
                const auto& [lo, hi] = base_box.ranges[static_cast<std::size_t>(d)];
                env[static_cast<std::size_t>(d)] =
                    lo + (hi - lo) * idx[static_cast<std::size_t>(d)] / (steps - 1);
            }
            const double fv = warp.eval_value(env);
            if (!(fv > 0.0)) {
                std::ostringstream os;
                os << "warping function not positive at base sample [";
                for (int d = 0; d < n1; ++d)
                    os << env[static_cast<std::size_t>(d)] << (d + 1 < n1 ? ", " : "");
                os << "]: f = " << fv;
                throw ValidationError(os.str());
            }
            int d = 0;
            while (d < n1 && ++idx[static_cast<std::size_t>(d)] == steps) {
                idx[static_cast<std::size_t>(d)] = 0;
                ++d;
            }
            if (d == n1) break;
        }
    }

    // Total chart: base vars then fiber vars; names must not collide.
    std::vector<std::string> vars = base.vars();
    for (const auto& v : fiber.vars()) {
        for (const auto& b : vars)
            if (b == v)
                throw ValidationError("base and fiber share variable name '" + v + "'");
        vars.push_back(v);
    }

    const int n = n1 + n2;
    std::vector<Expr> entries(static_cast<std::size_t>(n) * n, eb::lit(0.0));
    Expr f2 = eb::mul(warp, warp);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            entries[static_cast<std::size_t>(i) * n + j] = base.entry(i, j);
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j)
            entries[static_cast<std::size_t>(n1 + i) * n + (n1 + j)] =
                eb::mul(f2, eb::shift_vars(fiber.entry(i, j), n1));

    WarpedProduct wp;
    wp.base_ = std::move(base);
    wp.fiber_ = std::move(fiber);
    wp.warp_ = warp;
    wp.n1_ = n1;
    wp.n2_ = n2;
    wp.total_ = MetricField(std::move(vars), std::move(entries));
    return wp;
}

double WarpedProduct::warp_value(const Vec& base_point) const {
    std::vector<double> env(base_point.data(), base_point.data() + base_point.size());
    // The warp expression only reads the first n1 entries; pad when a total
    // point is passed.
    env.resize(static_cast<std::size_t>(dim()), 0.0);
    return warp_.eval_value(env);
}

Mat WarpedProduct::split_frame(const Vec& p) const {
    const Mat g = total_.value(p);
    require_spd(g, p);
    return gram_schmidt(g, Mat::Identity(dim(), dim()));
}

double WarpedProduct::warp_connection_residual(const Vec& p, const Vec& X,
                                               const Vec& Y) const {
    const int n = dim();
    for (int i = n1_; i < n; ++i)
        if (X[i] != 0.0)
            throw ValidationError("warp_connection_residual: X must lie in D1");
    for (int i = 0; i < n1_; ++i)
        if (Y[i] != 0.0)
            throw ValidationError("warp_connection_residual: Y must lie in D2");

    MetricJet jet = total_.jet(p);
    ChristoffelJet ch = christoffel_jet(jet, p);

    Vec nabla = Vec::Zero(n);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                nabla[k] += X[a] * Y[b] * ch.gamma(k, a, b);

    std::vector<Scalar2> env = Scalar2::lift(p);
    Scalar2 f = warp_.eval(env);
    double xlnf = 0.0;
    for (int a = 0; a < n1_; ++a) xlnf += X[a] * f.grad()[a] / f.value();

    Vec resid = nabla - xlnf * Y;
    return std::sqrt(resid.dot(jet.g * resid));
}

double WarpedProduct::delta_f_over_f(const Vec& p) const {
    MetricJet jet = total_.jet(p);
    require_spd(jet.g, p);
    ChristoffelJet ch = christoffel_jet(jet, p);
    Mat frame = gram_schmidt(jet.g, Mat::Identity(dim(), dim()));
    std::vector<Scalar2> env = Scalar2::lift(p);
    Scalar2 f = warp_.eval(env);
    const double lap = neg_hessian_trace(ch, frame, n1_, f.grad(), f.hess());
    return lap / f.value();
}

double WarpedProduct::mixed_plane_sum(const Vec& p, int fiber_index) const {
    if (fiber_index < 0 || fiber_index >= n2_)
        throw ValidationError("mixed_plane_sum: fiber index out of range");
    CurvatureAtPoint cp = curvature_at(total_, p);
    Mat frame = gram_schmidt(cp.g, Mat::Identity(dim(), dim()));
    double acc = 0.0;
    for (int i = 0; i < n1_; ++i)
        acc += sectional(cp, frame.col(i), frame.col(n1_ + fiber_index));
    return acc;
}

}  // namespace warpcurv
