#include "warpcurv/extremal.hpp"

#include <cmath>
#include <random>

#include "warpcurv/errors.hpp"

namespace warpcurv {

namespace {

/// Curvature tensor contracted into an orthonormal basis of the subspace,
/// one index at a time.
Tensor4 restrict_tensor(const Tensor4& rm, const Mat& B) {
    const int n = static_cast<int>(B.rows());
    const int d = static_cast<int>(B.cols());
    // Stage over each slot; intermediate tensors keep extent max(n, d) for
    // simplicity (dims are <= 8).
    const int e = std::max(n, d);
    Tensor4 t1(e), t2(e), t3(e);
    for (int a = 0; a < d; ++a)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = 0.0;
                    for (int i = 0; i < n; ++i) v += B(i, a) * rm(i, j, k, l);
                    t1(a, j, k, l) = v;
                }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = 0.0;
                    for (int j = 0; j < n; ++j) v += B(j, b) * t1(a, j, k, l);
                    t2(a, b, k, l) = v;
                }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int l = 0; l < n; ++l) {
                    double v = 0.0;
                    for (int k = 0; k < n; ++k) v += B(k, c) * t2(a, b, k, l);
                    t3(a, b, c, l) = v;
                }
    Tensor4 res(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int f = 0; f < d; ++f) {
                    double v = 0.0;
                    for (int l = 0; l < n; ++l) v += B(l, f) * t3(a, b, c, l);
                    res(a, b, c, f) = v;
                }
    return res;
}

struct PlaneObjective {
    const Tensor4& R;  // restricted tensor, orthonormal coordinates
    int d;

    double numerator(const Vec& x, const Vec& y) const {
        double v = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l)
                        v += R(i, j, k, l) * x[i] * y[j] * y[k] * x[l];
        return v;
    }

    double value(const Vec& x, const Vec& y) const {
        const double den =
            x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2);
        return numerator(x, y) / den;
    }

    void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const {
        gx.setZero(d);
        gy.setZero(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l) {
                        const double r = R(i, j, k, l);
                        gx[i] += r * y[j] * y[k] * x[l];
                        gx[l] += r * x[i] * y[j] * y[k];
                        gy[j] += r * x[i] * y[k] * x[l];
                        gy[k] += r * x[i] * y[j] * x[l];
                    }
        const double den =
            x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2);
        const double K = numerator(x, y) / den;
        Vec dDx = 2.0 * y.squaredNorm() * x - 2.0 * x.dot(y) * y;
        Vec dDy = 2.0 * x.squaredNorm() * y - 2.0 * x.dot(y) * x;
        gx = (gx - K * dDx) / den;
        gy = (gy - K * dDy) / den;
    }
};

/// Re-orthonormalize a pair of columns (2-column QR).
void retract(Vec& x, Vec& y) {
    x.normalize();
    y -= x.dot(y) * x;
    y.normalize();
}

/// Projected-gradient ascent of sign*K from one start; returns best value.
double ascend(const PlaneObjective& obj, double sign, Vec x, Vec y,
              const ExtremalOptions& opts, Vec& best_x, Vec& best_y) {
    retract(x, y);
    double fv = sign * obj.value(x, y);
    Vec gx(obj.d), gy(obj.d);
    for (int it = 0; it < opts.max_iters; ++it) {
        obj.gradient(x, y, gx, gy);
        gx *= sign;
        gy *= sign;
        // Tangent projection on the Stiefel pair Z = [x y]:
        // G <- G - Z sym(Z^T G).
        Eigen::Matrix2d ztg;
        ztg << x.dot(gx), x.dot(gy), y.dot(gx), y.dot(gy);
        Eigen::Matrix2d sym = 0.5 * (ztg + ztg.transpose());
        Vec tx = gx - x * sym(0, 0) - y * sym(1, 0);
        Vec ty = gy - x * sym(0, 1) - y * sym(1, 1);
        const double gn = std::sqrt(tx.squaredNorm() + ty.squaredNorm());
        if (gn < 1e-14) break;

        double alpha = 1.0;
        double next = fv;
        Vec nx, ny;
        bool improved = false;
        for (int ls = 0; ls < 40; ++ls) {
            nx = x + alpha * tx;
            ny = y + alpha * ty;
            retract(nx, ny);
            next = sign * obj.value(nx, ny);
            if (next > fv) {
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!improved) break;
        const double delta = next - fv;
        x = nx;
        y = ny;
        fv = next;
        if (delta < opts.tol) break;
    }
    best_x = x;
    best_y = y;
    return sign * fv;
}

}  // namespace

ExtremalK extremal_numeric(const CurvatureAtPoint& cp, const Mat& subspace,
                           const ExtremalOptions& opts) {
    const int d = static_cast<int>(subspace.cols());
    if (d < 2)
        throw ValidationError("extremal_sectional: subspace dimension < 2");
    Mat B = gram_schmidt(cp.g, subspace);  // also checks rank

    ExtremalK out;
    out.method = ExtremalK::Method::Numeric;

    if (d == 2) {
        const double k = sectional(cp, B.col(0), B.col(1));
        out.inf_val = out.sup_val = k;
        out.argmin = out.argmax = B;
        return out;
    }

    Tensor4 R = restrict_tensor(cp.rm, B);
    PlaneObjective obj{R, d};

    // Deterministic start list: every coordinate pair, then seeded random
    // orthonormal pairs up to the requested count.
    std::vector<std::pair<Vec, Vec>> starts;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            Vec x = Vec::Zero(d), y = Vec::Zero(d);
            x[a] = 1.0;
            y[b] = 1.0;
            starts.emplace_back(std::move(x), std::move(y));
        }
    std::mt19937 rng(opts.seed);
    std::normal_distribution<double> gauss;
    while (static_cast<int>(starts.size()) < opts.starts) {
        Vec x(d), y(d);
        for (int i = 0; i < d; ++i) {
            x[i] = gauss(rng);
            y[i] = gauss(rng);
        }
        retract(x, y);
        starts.emplace_back(std::move(x), std::move(y));
    }

    double best_max = -std::numeric_limits<double>::infinity();
    double best_min = std::numeric_limits<double>::infinity();
    Vec xmax, ymax, xmin, ymin;
    for (const auto& [sx, sy] : starts) {
        Vec bx, by;
        const double up = ascend(obj, +1.0, sx, sy, opts, bx, by);
        if (up > best_max) {
            best_max = up;
            xmax = bx;
            ymax = by;
        }
        const double dn = ascend(obj, -1.0, sx, sy, opts, bx, by);
        if (dn < best_min) {
            best_min = dn;
            xmin = bx;
            ymin = by;
        }
    }

    out.inf_val = best_min;
    out.sup_val = best_max;
    out.argmin = Mat(B.rows(), 2);
    out.argmin.col(0) = B * xmin;
    out.argmin.col(1) = B * ymin;
    out.argmax = Mat(B.rows(), 2);
    out.argmax.col(0) = B * xmax;
    out.argmax.col(1) = B * ymax;
    return out;
}

}  // namespace warpcurv
