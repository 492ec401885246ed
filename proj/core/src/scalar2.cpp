#include "warpcurv/scalar2.hpp"

#include <cmath>

namespace warpcurv {

namespace {

void check_dims(const Scalar2& a, const Scalar2& b) {
    if (a.dim() != b.dim())
        throw std::logic_error("Scalar2 dimension mismatch: " +
                               std::to_string(a.dim()) + " vs " +
                               std::to_string(b.dim()));
}

void check_finite(const char* op, double v) {
    if (!std::isfinite(v)) throw EvalError(op, v, "non-finite result");
}

/// Chain rule for a unary f: value f(v), grad f'(v) g, hess f'(v) H + f''(v) g g^T.
/// Outer products are materialized before scaling; folding the scalar into
/// one factor would break the bit symmetry of the Hessian.
Scalar2 unary_chain(const char* op, const Scalar2& x, double f, double df,
                    double ddf) {
    check_finite(op, f);
    Eigen::MatrixXd h = df * x.hess();
    const Eigen::MatrixXd outer = x.grad() * x.grad().transpose();
    h += ddf * outer;
    return {f, df * x.grad(), std::move(h)};
}

/// Full second-order chain rule for a binary f(a, b).
Scalar2 binary_chain(const char* op, const Scalar2& a, const Scalar2& b,
                     double f, double fa, double fb, double faa, double fab,
                     double fbb) {
    check_finite(op, f);
    Eigen::VectorXd g = fa * a.grad() + fb * b.grad();
    Eigen::MatrixXd h = fa * a.hess() + fb * b.hess();
    const Eigen::MatrixXd outer_a = a.grad() * a.grad().transpose();
    const Eigen::MatrixXd outer_b = b.grad() * b.grad().transpose();
    const Eigen::MatrixXd cross = a.grad() * b.grad().transpose() +
                                  b.grad() * a.grad().transpose();
    h += faa * outer_a;
    h += fbb * outer_b;
    h += fab * cross;
    return {f, std::move(g), std::move(h)};
}

}  // namespace

Scalar2 Scalar2::constant(double v, int dim) {
    return {v, Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Zero(dim, dim)};
}

std::vector<Scalar2> Scalar2::lift(const Eigen::VectorXd& point) {
    const int n = static_cast<int>(point.size());
    std::vector<Scalar2> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        if (!std::isfinite(point[k]))
            throw EvalError("lift", point[k], "non-finite input component");
        Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
        g[k] = 1.0;
        out.emplace_back(point[k], std::move(g), Eigen::MatrixXd::Zero(n, n));
    }
    return out;
}

bool Scalar2::is_constant() const {
    return grad_.isZero(0.0) && hess_.isZero(0.0);
}

Scalar2 Scalar2::operator-() const { return {-val_, -grad_, -hess_}; }

Scalar2& Scalar2::operator+=(const Scalar2& o) {
    check_dims(*this, o);
    val_ += o.val_;
    grad_ += o.grad_;
    hess_ += o.hess_;
    return *this;
}

Scalar2& Scalar2::operator-=(const Scalar2& o) {
    check_dims(*this, o);
    val_ -= o.val_;
    grad_ -= o.grad_;
    hess_ -= o.hess_;
    return *this;
}

Scalar2 operator+(const Scalar2& a, const Scalar2& b) {
    check_dims(a, b);
    return {a.val_ + b.val_, a.grad_ + b.grad_, a.hess_ + b.hess_};
}

Scalar2 operator-(const Scalar2& a, const Scalar2& b) {
    check_dims(a, b);
    return {a.val_ - b.val_, a.grad_ - b.grad_, a.hess_ - b.hess_};
}

Scalar2 operator*(const Scalar2& a, const Scalar2& b) {
    check_dims(a, b);
    Eigen::MatrixXd h = b.val_ * a.hess_ + a.val_ * b.hess_;
    h += a.grad_ * b.grad_.transpose() + b.grad_ * a.grad_.transpose();
    return {a.val_ * b.val_, b.val_ * a.grad_ + a.val_ * b.grad_, std::move(h)};
}

Scalar2 operator/(const Scalar2& a, const Scalar2& b) {
    check_dims(a, b);
    if (b.val_ == 0.0) throw EvalError("/", 0.0, "division by zero");
    const double inv = 1.0 / b.val_;
    const double f = a.val_ / b.val_;
    // f(a,b) = a/b: fa = 1/b, fb = -a/b^2, faa = 0, fab = -1/b^2, fbb = 2a/b^3.
    return binary_chain("/", a, b, f, inv, -f * inv, 0.0, -inv * inv,
                        2.0 * f * inv * inv);
}

Scalar2 operator+(const Scalar2& a, double b) {
    return {a.val_ + b, a.grad_, a.hess_};
}
Scalar2 operator+(double a, const Scalar2& b) { return b + a; }
Scalar2 operator-(const Scalar2& a, double b) {
    return {a.val_ - b, a.grad_, a.hess_};
}
Scalar2 operator-(double a, const Scalar2& b) {
    return {a - b.val_, -b.grad_, -b.hess_};
}
Scalar2 operator*(const Scalar2& a, double b) {
    return {a.val_ * b, b * a.grad_, b * a.hess_};
}
Scalar2 operator*(double a, const Scalar2& b) { return b * a; }
Scalar2 operator/(const Scalar2& a, double b) {
    if (b == 0.0) throw EvalError("/", 0.0, "division by zero");
    return a * (1.0 / b);
}
Scalar2 operator/(double a, const Scalar2& b) {
    return Scalar2::constant(a, b.dim()) / b;
}

Scalar2 sin(const Scalar2& x) {
    const double s = std::sin(x.value()), c = std::cos(x.value());
    return unary_chain("sin", x, s, c, -s);
}

Scalar2 cos(const Scalar2& x) {
    const double s = std::sin(x.value()), c = std::cos(x.value());
    return unary_chain("cos", x, c, -s, -c);
}

Scalar2 tan(const Scalar2& x) {
    const double c = std::cos(x.value());
    if (c == 0.0) throw EvalError("tan", x.value(), "pole of tan");
    const double t = std::tan(x.value());
    const double sec2 = 1.0 / (c * c);
    return unary_chain("tan", x, t, sec2, 2.0 * t * sec2);
}

Scalar2 exp(const Scalar2& x) {
    const double e = std::exp(x.value());
    return unary_chain("exp", x, e, e, e);
}

Scalar2 log(const Scalar2& x) {
    if (!(x.value() > 0.0))
        throw EvalError("log", x.value(), "argument must be positive");
    const double inv = 1.0 / x.value();
    return unary_chain("log", x, std::log(x.value()), inv, -inv * inv);
}

Scalar2 sqrt(const Scalar2& x) {
    if (x.value() < 0.0)
        throw EvalError("sqrt", x.value(), "argument must be nonnegative");
    if (x.value() == 0.0)
        throw EvalError("sqrt", 0.0, "derivative singular at zero");
    const double s = std::sqrt(x.value());
    const double d = 0.5 / s;
    return unary_chain("sqrt", x, s, d, -0.5 * d / x.value());
}

Scalar2 sinh(const Scalar2& x) {
    const double s = std::sinh(x.value()), c = std::cosh(x.value());
    return unary_chain("sinh", x, s, c, s);
}

Scalar2 cosh(const Scalar2& x) {
    const double s = std::sinh(x.value()), c = std::cosh(x.value());
    return unary_chain("cosh", x, c, s, c);
}

Scalar2 powi(const Scalar2& x, long long n) {
    if (n == 0) return Scalar2::constant(1.0, x.dim());
    const bool neg = n < 0;
    const long long k = neg ? -n : n;
    Scalar2 r = x;
    for (long long i = 1; i < k; ++i) r = r * x;
    if (neg) return 1.0 / r;
    return r;
}

Scalar2 pow(const Scalar2& x, double p) {
    if (p == std::floor(p) && std::abs(p) <= 64.0)
        return powi(x, static_cast<long long>(p));
    if (!(x.value() > 0.0))
        throw EvalError("pow", x.value(),
                        "non-integer exponent needs positive base");
    const double f = std::pow(x.value(), p);
    const double df = p * std::pow(x.value(), p - 1.0);
    const double ddf = p * (p - 1.0) * std::pow(x.value(), p - 2.0);
    return unary_chain("pow", x, f, df, ddf);
}

Scalar2 pow(const Scalar2& x, const Scalar2& p) {
    if (p.is_constant()) return pow(x, p.value());
    // General a^b = exp(b log a).
    return exp(p * log(x));
}

Scalar2 atan2(const Scalar2& y, const Scalar2& x) {
    const double xv = x.value(), yv = y.value();
    if (xv == 0.0 && yv == 0.0)
        throw EvalError("atan2", 0.0, "both arguments zero");
    const double r2 = xv * xv + yv * yv;
    const double f = std::atan2(yv, xv);
    const double fy = xv / r2, fx = -yv / r2;
    const double r4 = r2 * r2;
    const double fyy = -2.0 * xv * yv / r4;
    const double fyx = (yv * yv - xv * xv) / r4;
    const double fxx = 2.0 * xv * yv / r4;
    return binary_chain("atan2", y, x, f, fy, fx, fyy, fyx, fxx);
}

}  // namespace warpcurv
