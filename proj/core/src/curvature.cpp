#include "warpcurv/curvature.hpp"

#include <cmath>

#include "warpcurv/errors.hpp"

namespace warpcurv {

ChristoffelJet christoffel_jet(const MetricJet& jet, const Vec& p) {
    const int n = static_cast<int>(jet.g.rows());
    require_spd(jet.g, p);
    const Mat ginv = jet.g.inverse();

    // dginv[m] = -ginv * dg[m] * ginv
    std::vector<Mat> dginv(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m)
        dginv[static_cast<std::size_t>(m)] =
            -ginv * jet.dg[static_cast<std::size_t>(m)] * ginv;

    ChristoffelJet out{Tensor3(n), Tensor4(n)};
    // c(l,i,j) = d_i g_jl + d_j g_il - d_l g_ij  (first-kind, doubled)
    auto c = [&](int l, int i, int j) {
        return jet.dg[static_cast<std::size_t>(i)](j, l) +
               jet.dg[static_cast<std::size_t>(j)](i, l) -
               jet.dg[static_cast<std::size_t>(l)](i, j);
    };
    // d_m c(l,i,j) from the exact second derivatives of g.
    auto dc = [&](int m, int l, int i, int j) {
        return jet.ddg(m, i, j, l) + jet.ddg(m, j, i, l) - jet.ddg(m, l, i, j);
    };

    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double v = 0.0;
                for (int l = 0; l < n; ++l) v += ginv(k, l) * c(l, i, j);
                v *= 0.5;
                out.gamma(k, i, j) = v;
                out.gamma(k, j, i) = v;
                for (int m = 0; m < n; ++m) {
                    double dv = 0.0;
                    for (int l = 0; l < n; ++l)
                        dv += dginv[static_cast<std::size_t>(m)](k, l) * c(l, i, j) +
                              ginv(k, l) * dc(m, l, i, j);
                    dv *= 0.5;
                    out.dgamma(m, k, i, j) = dv;
                    out.dgamma(m, k, j, i) = dv;
                }
            }
    return out;
}

Tensor3 christoffel(const MetricField& m, const Vec& p) {
    return christoffel_jet(m.jet(p), p).gamma;
}

CurvatureAtPoint curvature_at(const MetricField& m, const Vec& p) {
    const int n = m.dim();
    MetricJet jet = m.jet(p);
    require_spd(jet.g, p);
    ChristoffelJet ch = christoffel_jet(jet, p);

    CurvatureAtPoint out;
    out.p = p;
    out.g = jet.g;
    out.ginv = jet.g.inverse();
    out.gamma = ch.gamma;
    out.rm = Tensor4(n);

    // R^l_ijk, then lower the upper slot with g.
    Tensor4 rup(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = ch.dgamma(i, l, j, k) - ch.dgamma(j, l, i, k);
                    for (int s = 0; s < n; ++s)
                        v += ch.gamma(l, i, s) * ch.gamma(s, j, k) -
                             ch.gamma(l, j, s) * ch.gamma(s, i, k);
                    rup(i, j, k, l) = v;
                }
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = 0.0;
                    for (int s = 0; s < n; ++s) v += rup(i, j, k, s) * jet.g(s, l);
                    out.rm(i, j, k, l) = v;
                }
    return out;
}

double sectional(const CurvatureAtPoint& cp, const Vec& X, const Vec& Y) {
    const int n = static_cast<int>(cp.g.rows());
    const double xx = X.dot(cp.g * X);
    const double yy = Y.dot(cp.g * Y);
    const double xy = X.dot(cp.g * Y);
    const double gram = xx * yy - xy * xy;
    if (!(gram > 1e-12))
        throw ValidationError("sectional: degenerate 2-plane (Gram det <= 1e-12)");
    double num = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (X[i] == 0.0 && Y[j] == 0.0) continue;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    num += cp.rm(i, j, k, l) * X[i] * Y[j] * Y[k] * X[l];
        }
    return num / gram;
}

double scalar_curvature(const CurvatureAtPoint& cp) {
    const int n = static_cast<int>(cp.g.rows());
    Mat frame = gram_schmidt(cp.g, Mat::Identity(n, n));
    double tau = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            tau += sectional(cp, frame.col(a), frame.col(b));
    return tau;
}

double scalar_curvature(const MetricField& m, const Vec& p) {
    return scalar_curvature(curvature_at(m, p));
}

double ricci(const CurvatureAtPoint& cp, const Vec& X) {
    const int n = static_cast<int>(cp.g.rows());
    const double norm = X.dot(cp.g * X);
    if (std::abs(norm - 1.0) > 1e-9)
        throw ValidationError("ricci: direction is not a unit vector");
    Mat seeds(n, 1);
    seeds.col(0) = X;
    Mat frame = complete_frame(cp.g, seeds, Mat::Identity(n, n));
    double out = 0.0;
    for (int a = 1; a < n; ++a) out += sectional(cp, X, frame.col(a));
    return out;
}

double neg_hessian_trace(const ChristoffelJet& ch, const Mat& frame,
                         int frame_cols, const Vec& df, const Mat& ddf) {
    const int n = static_cast<int>(frame.rows());
    const int cols = frame_cols < 0 ? static_cast<int>(frame.cols()) : frame_cols;
    double acc = 0.0;
    for (int a = 0; a < cols; ++a) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double gdf = 0.0;
                for (int c = 0; c < n; ++c) gdf += ch.gamma(c, i, j) * df[c];
                acc += frame(i, a) * frame(j, a) * (gdf - ddf(i, j));
            }
    }
    return acc;
}

double laplacian_paper(const MetricField& m, const Expr& f, const Vec& p,
                       int frame_cols) {
    MetricJet jet = m.jet(p);
    require_spd(jet.g, p);
    ChristoffelJet ch = christoffel_jet(jet, p);
    Mat frame = gram_schmidt(jet.g, Mat::Identity(m.dim(), m.dim()));
    std::vector<Scalar2> env = Scalar2::lift(p);
    Scalar2 fv = f.eval(env);
    return neg_hessian_trace(ch, frame, frame_cols, fv.grad(), fv.hess());
}

}  // namespace warpcurv
