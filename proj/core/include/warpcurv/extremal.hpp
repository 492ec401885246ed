#pragma once

#include "warpcurv/curvature.hpp"

namespace warpcurv {

/// Extremes of sectional curvature over 2-planes inside a tangent subspace.
struct ExtremalK {
    enum class Method { ExactCatalog, Numeric };

    double inf_val = 0.0;
    double sup_val = 0.0;
    Mat argmin;  // chart components of a spanning pair (n x 2)
    Mat argmax;
    Method method = Method::Numeric;
};

struct ExtremalOptions {
    int starts = 48;           // multi-start count (>= 32 per contract)
    unsigned seed = 20240817;  // deterministic
    int max_iters = 400;
    double tol = 1e-11;        // stop when |dK| per iteration drops below
};

/// Numeric inf/sup of K over 2-planes of span(subspace columns) at the point
/// described by `cp`. Orthonormal pairs are parameterized on the Stiefel
/// manifold of the subspace; each start runs projected-gradient ascent (and
/// descent) with backtracking line search; results reduce by min/max so the
/// outcome is start-order independent.
ExtremalK extremal_numeric(const CurvatureAtPoint& cp, const Mat& subspace,
                           const ExtremalOptions& opts = {});

}  // namespace warpcurv
