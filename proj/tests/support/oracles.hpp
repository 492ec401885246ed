#pragma once

// Test-only oracles, kept independent of the production code paths they
// check: central finite differences for the hyper-dual arithmetic, a direct
// recursive interpreter for the expression evaluator, and the coordinate
// divergence-form Laplace-Beltrami operator for the sign-convention check.

#include <functional>
#include <random>

#include "warpcurv/expr.hpp"
#include "warpcurv/metric.hpp"

namespace warpcurv::test {

using RealFn = std::function<double(const Vec&)>;

/// Central differences with step h.
Vec fd_gradient(const RealFn& f, const Vec& p, double h = 1e-5);
Mat fd_hessian(const RealFn& f, const Vec& p, double h = 1e-5);

/// Plain-real recursive interpreter written against the grammar definition
/// (integer powers by repeated multiplication, like the spec'd semantics).
double interpret(const Expr& e, const std::vector<double>& env);

/// Divergence-form Laplace-Beltrami sum_i (1/sqrt|g|) d_i(sqrt|g| g^{ij} d_j f),
/// computed with first-order hyper-dual arithmetic on its own code path.
/// laplacian_paper(f) + divgrad(f) == 0.
double divgrad(const MetricField& m, const Expr& f, const Vec& p);

/// Random expression trees. `safe` trees evaluate smoothly near `point`
/// (rejection-sampled against domain errors and badly scaled derivatives);
/// `any` trees exercise the full grammar for print/parse round-trips.
Expr random_expr_safe(std::mt19937& rng, const std::vector<std::string>& vars,
                      const Vec& point, int max_depth = 4);
Expr random_expr_any(std::mt19937& rng, const std::vector<std::string>& vars,
                     int max_depth = 4);

/// Uniform point with coordinates in [lo, hi].
Vec random_point(std::mt19937& rng, int dim, double lo, double hi);

}  // namespace warpcurv::test
