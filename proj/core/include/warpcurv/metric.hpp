#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "warpcurv/expr.hpp"
#include "warpcurv/tensor.hpp"

namespace warpcurv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Metric values and their exact first and second coordinate derivatives at a
/// chart point: dg[k](i,j) = d_k g_ij, ddg(k,l,i,j) = d_k d_l g_ij.
struct MetricJet {
    Mat g;
    std::vector<Mat> dg;
    Tensor4 ddg;
};

/// Smooth map from chart coordinates to a symmetric positive-definite matrix,
/// stored as a symmetric matrix of closed-form expressions over named
/// coordinates and evaluated over second-order numbers.
class MetricField {
public:
    MetricField() = default;

    /// `entries` is row-major dim x dim; symmetry of the evaluated matrix is
    /// checked at every jet evaluation (max asymmetry 1e-12).
    MetricField(std::vector<std::string> vars, std::vector<Expr> entries);

    int dim() const noexcept { return dim_; }
    const std::vector<std::string>& vars() const noexcept { return vars_; }
    const Expr& entry(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * dim_ + j];
    }

    /// Metric value at p (no derivatives).
    Mat value(const Vec& p) const;

    /// Value plus exact first and second derivatives.
    MetricJet jet(const Vec& p) const;

private:
    int dim_ = 0;
    std::vector<std::string> vars_;
    std::vector<Expr> entries_;
};

/// Identity metric in dimension n.
MetricField euclidean_metric(int n);

/// g-orthonormal tangent frame at a point, columns in chart coordinates.
struct Frame {
    Mat basis;  // n x k, column a = frame vector e_a
    Mat g;      // metric value used to orthonormalize
};

/// Modified Gram-Schmidt with respect to the inner product g. Preserves the
/// span filtration of the seed columns; throws ValidationError on rank
/// deficiency (squared residual below 1e-12 of the seed's norm).
Mat gram_schmidt(const Mat& g, const Mat& seeds);

/// Extend `seeds` (assumed independent, possibly empty) to a full
/// g-orthonormal basis by scanning candidate columns and skipping dependent
/// ones.
Mat complete_frame(const Mat& g, const Mat& seeds, const Mat& candidates);

/// Cholesky-based SPD check; throws ValidationError when g(p) is not positive
/// definite.
void require_spd(const Mat& g, const Vec& p);

}  // namespace warpcurv
