#pragma once

#include <Eigen/Dense>
#include <vector>

#include "warpcurv/errors.hpp"

namespace warpcurv {

/// Second-order forward-mode number: value, gradient and Hessian with respect
/// to a fixed set of active coordinates. All arithmetic propagates the first-
/// and second-order chain rules exactly, so curvature tensors built on top of
/// it carry no truncation error.
///
/// The Hessian stays symmetric to bit equality: every operation writes it
/// either as a scaled copy of a symmetric matrix or as a + b with a, b built
/// from commutative products (g_i * g_j), so (i,j) and (j,i) are the same
/// IEEE expression.
class Scalar2 {
public:
    Scalar2() : val_(0.0) {}

    Scalar2(double v, Eigen::VectorXd g, Eigen::MatrixXd h)
        : val_(v), grad_(std::move(g)), hess_(std::move(h)) {}

    /// Constant: value v, zero derivatives in `dim` active coordinates.
    static Scalar2 constant(double v, int dim);

    /// Seed a point: component k carries value point[k], gradient e_k, zero
    /// Hessian. Rejects non-finite input.
    static std::vector<Scalar2> lift(const Eigen::VectorXd& point);

    double value() const noexcept { return val_; }
    const Eigen::VectorXd& grad() const noexcept { return grad_; }
    const Eigen::MatrixXd& hess() const noexcept { return hess_; }
    int dim() const noexcept { return static_cast<int>(grad_.size()); }

    /// True when both derivative parts are exactly zero (used to route
    /// integer powers of possibly nonpositive bases).
    bool is_constant() const;

    Scalar2 operator-() const;
    Scalar2& operator+=(const Scalar2& o);
    Scalar2& operator-=(const Scalar2& o);

    friend Scalar2 operator+(const Scalar2& a, const Scalar2& b);
    friend Scalar2 operator-(const Scalar2& a, const Scalar2& b);
    friend Scalar2 operator*(const Scalar2& a, const Scalar2& b);
    friend Scalar2 operator/(const Scalar2& a, const Scalar2& b);

    friend Scalar2 operator+(const Scalar2& a, double b);
    friend Scalar2 operator+(double a, const Scalar2& b);
    friend Scalar2 operator-(const Scalar2& a, double b);
    friend Scalar2 operator-(double a, const Scalar2& b);
    friend Scalar2 operator*(const Scalar2& a, double b);
    friend Scalar2 operator*(double a, const Scalar2& b);
    friend Scalar2 operator/(const Scalar2& a, double b);
    friend Scalar2 operator/(double a, const Scalar2& b);

private:
    double val_;
    Eigen::VectorXd grad_;
    Eigen::MatrixXd hess_;
};

Scalar2 sin(const Scalar2& x);
Scalar2 cos(const Scalar2& x);
Scalar2 tan(const Scalar2& x);
Scalar2 exp(const Scalar2& x);
Scalar2 log(const Scalar2& x);
Scalar2 sqrt(const Scalar2& x);
Scalar2 sinh(const Scalar2& x);
Scalar2 cosh(const Scalar2& x);

/// x^p for a real exponent; requires x > 0 unless p is a (runtime) integer,
/// in which case the repeated-product route handles any base.
Scalar2 pow(const Scalar2& x, double p);
Scalar2 pow(const Scalar2& x, const Scalar2& p);

/// Integer power by repeated multiplication; valid for any base.
Scalar2 powi(const Scalar2& x, long long n);

Scalar2 atan2(const Scalar2& y, const Scalar2& x);

}  // namespace warpcurv
