#pragma once

#include "warpcurv/metric.hpp"

namespace warpcurv {

/// Christoffel symbols of the second kind and their exact first derivatives:
/// gamma(k,i,j) = Gamma^k_ij, dgamma(m,k,i,j) = d_m Gamma^k_ij. The
/// derivatives come from the second derivatives of the metric carried by the
/// hyper-dual evaluation, never from finite differences.
struct ChristoffelJet {
    Tensor3 gamma;
    Tensor4 dgamma;
};

ChristoffelJet christoffel_jet(const MetricJet& jet, const Vec& p);

/// Gamma^k_ij only.
Tensor3 christoffel(const MetricField& m, const Vec& p);

/// Curvature data of a chart point.
///
/// Index convention: rm(i,j,k,l) = <R(d_i, d_j) d_k, d_l> with
/// R(X,Y)Z = grad_X grad_Y Z - grad_Y grad_X Z - grad_[X,Y] Z, i.e.
/// R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik
///           + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik,
/// lowered on the last slot. On the unit two-sphere chart g = diag(1, sin^2 t)
/// this makes rm(1,2,2,1) = +sin^2 t, so sectional curvature is positive.
struct CurvatureAtPoint {
    Vec p;
    Mat g;
    Mat ginv;
    Tensor3 gamma;
    Tensor4 rm;  // fully lowered
};

CurvatureAtPoint curvature_at(const MetricField& m, const Vec& p);

/// Sectional curvature of the plane spanned by X, Y (chart components):
/// K = <R(X,Y)Y, X> / (<X,X><Y,Y> - <X,Y>^2). Rejects planes whose metric
/// Gram determinant is at or below 1e-12.
double sectional(const CurvatureAtPoint& cp, const Vec& X, const Vec& Y);

/// Scalar curvature in the unordered-pair convention:
/// tau = sum_{i<j} K(e_i ^ e_j) over a g-orthonormal frame. This is half the
/// trace convention.
double scalar_curvature(const CurvatureAtPoint& cp);
double scalar_curvature(const MetricField& m, const Vec& p);

/// Ricci curvature of a unit vector X: sum of sectional curvatures over an
/// orthonormal completion {X, u_2, ..., u_n}. Frame-completion independent.
double ricci(const CurvatureAtPoint& cp, const Vec& X);

/// Laplacian in the sign convention
///   lap f = sum_i ((grad_{e_i} e_i) f - e_i^2 f),
/// the negative of the analyst's Laplace-Beltrami operator. Each term equals
/// -Hess f(e_i, e_i); the frame-extension derivatives cancel identically.
/// `frame_cols` restricts the sum to the first columns of the frame (the
/// warped-product machinery sums over base directions only); pass -1 for all.
double laplacian_paper(const MetricField& m, const Expr& f, const Vec& p,
                       int frame_cols = -1);

/// -Hess f(e_a, e_a) summed over the given frame columns, from precomputed
/// data. `df`/`ddf` are the coordinate gradient and Hessian of f at p.
double neg_hessian_trace(const ChristoffelJet& ch, const Mat& frame,
                         int frame_cols, const Vec& df, const Mat& ddf);

}  // namespace warpcurv
