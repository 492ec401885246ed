#include "support/oracles.hpp"

#include <cmath>

#include "warpcurv/errors.hpp"

namespace warpcurv::test {

Vec fd_gradient(const RealFn& f, const Vec& p, double h) {
    Vec g(p.size());
    for (int i = 0; i < p.size(); ++i) {
        Vec up = p, dn = p;
        up[i] += h;
        dn[i] -= h;
        g[i] = (f(up) - f(dn)) / (2.0 * h);
    }
    return g;
}

Mat fd_hessian(const RealFn& f, const Vec& p, double h) {
    const int n = static_cast<int>(p.size());
    Mat H(n, n);
    const double f0 = f(p);
    for (int i = 0; i < n; ++i) {
        Vec up = p, dn = p;
        up[i] += h;
        dn[i] -= h;
        H(i, i) = (f(up) - 2.0 * f0 + f(dn)) / (h * h);
        for (int j = i + 1; j < n; ++j) {
            Vec pp = p, pm = p, mp = p, mm = p;
            pp[i] += h;
            pp[j] += h;
            pm[i] += h;
            pm[j] -= h;
            mp[i] -= h;
            mp[j] += h;
            mm[i] -= h;
            mm[j] -= h;
            H(i, j) = H(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
        }
    }
    return H;
}

namespace {

bool contains_var(const Expr::Node& n) {
    if (n.kind == Expr::Kind::Var) return true;
    return (n.a && contains_var(*n.a)) || (n.b && contains_var(*n.b));
}

double interp_node(const Expr::Node& n, const std::vector<double>& env) {
    using K = Expr::Kind;
    using F = Expr::Fn;
    switch (n.kind) {
        case K::Literal: return n.lit;
        case K::Var: return env.at(static_cast<std::size_t>(n.var));
        case K::Neg: return -interp_node(*n.a, env);
        case K::Add: return interp_node(*n.a, env) + interp_node(*n.b, env);
        case K::Sub: return interp_node(*n.a, env) - interp_node(*n.b, env);
        case K::Mul: return interp_node(*n.a, env) * interp_node(*n.b, env);
        case K::Div: return interp_node(*n.a, env) / interp_node(*n.b, env);
        case K::Pow: {
            const double a = interp_node(*n.a, env);
            const double b = interp_node(*n.b, env);
            if (!contains_var(*n.b)) {
                if (b == std::floor(b) && std::abs(b) <= 64.0) {
                    long long k = static_cast<long long>(b);
                    if (k == 0) return 1.0;
                    bool neg = k < 0;
                    if (neg) k = -k;
                    double r = a;
                    for (long long i = 1; i < k; ++i) r *= a;
                    return neg ? 1.0 / r : r;
                }
                return std::pow(a, b);
            }
            return std::exp(b * std::log(a));
        }
        case K::Call: {
            const double a = interp_node(*n.a, env);
            switch (n.fn) {
                case F::Sin: return std::sin(a);
                case F::Cos: return std::cos(a);
                case F::Tan: return std::tan(a);
                case F::Exp: return std::exp(a);
                case F::Log: return std::log(a);
                case F::Sqrt: return std::sqrt(a);
                case F::Sinh: return std::sinh(a);
                case F::Cosh: return std::cosh(a);
            }
        }
    }
    return std::nan("");
}

/// First-order Gauss-Jordan inverse and determinant over Scalar2 (pivoting on
/// values; the inputs here are SPD metric blocks).
void s2_inverse_det(std::vector<Scalar2>& a, int n, std::vector<Scalar2>& inv,
                    Scalar2& det, int dim) {
    inv.assign(static_cast<std::size_t>(n) * n, Scalar2::constant(0.0, dim));
    for (int i = 0; i < n; ++i)
        inv[static_cast<std::size_t>(i) * n + i] = Scalar2::constant(1.0, dim);
    det = Scalar2::constant(1.0, dim);
    auto A = [&](int i, int j) -> Scalar2& {
        return a[static_cast<std::size_t>(i) * n + j];
    };
    auto I = [&](int i, int j) -> Scalar2& {
        return inv[static_cast<std::size_t>(i) * n + j];
    };
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A(r, col).value()) > std::abs(A(piv, col).value()))
                piv = r;
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(A(piv, j), A(col, j));
                std::swap(I(piv, j), I(col, j));
            }
            det = -det;
        }
        Scalar2 d = A(col, col);
        det = det * d;
        for (int j = 0; j < n; ++j) {
            A(col, j) = A(col, j) / d;
            I(col, j) = I(col, j) / d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Scalar2 factor = A(r, col);
            for (int j = 0; j < n; ++j) {
                A(r, j) = A(r, j) - factor * A(col, j);
                I(r, j) = I(r, j) - factor * I(col, j);
            }
        }
    }
}

}  // namespace

double interpret(const Expr& e, const std::vector<double>& env) {
    return interp_node(e.root(), env);
}

double divgrad(const MetricField& m, const Expr& f, const Vec& p) {
    const int n = m.dim();
    std::vector<Scalar2> env = Scalar2::lift(p);

    std::vector<Scalar2> g;
    g.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.push_back(m.entry(i, j).eval(env));

    std::vector<Scalar2> ginv;
    Scalar2 det = Scalar2::constant(0.0, n);
    s2_inverse_det(g, n, ginv, det, n);
    Scalar2 vol = sqrt(det);

    // d_j f as a first-order quantity: value from the gradient, gradient from
    // the Hessian (its own second derivatives are never used).
    Scalar2 fs = f.eval(env);
    std::vector<Scalar2> df;
    df.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        df.emplace_back(fs.grad()[j], fs.hess().row(j).transpose(),
                        Mat::Zero(n, n));

    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        Scalar2 flux = Scalar2::constant(0.0, n);
        for (int j = 0; j < n; ++j)
            flux += vol * ginv[static_cast<std::size_t>(i) * n + j] *
                    df[static_cast<std::size_t>(j)];
        acc += flux.grad()[i];
    }
    return acc / vol.value();
}

namespace {

Expr gen_any(std::mt19937& rng, const std::vector<std::string>& vars,
             int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    std::uniform_int_distribution<int> vpick(0, static_cast<int>(vars.size()) - 1);
    switch (pick(rng)) {
        case 0: return eb::lit(unif(rng));
        case 1: {
            const int v = vars.empty() ? -1 : vpick(rng);
            if (v < 0) return eb::lit(unif(rng));
            return eb::var(v, vars[static_cast<std::size_t>(v)]);
        }
        case 2: return eb::neg(gen_any(rng, vars, depth - 1));
        case 3:
            return eb::add(gen_any(rng, vars, depth - 1),
                           gen_any(rng, vars, depth - 1));
        case 4:
            return eb::sub(gen_any(rng, vars, depth - 1),
                           gen_any(rng, vars, depth - 1));
        case 5:
            return eb::mul(gen_any(rng, vars, depth - 1),
                           gen_any(rng, vars, depth - 1));
        case 6:
            return eb::div(gen_any(rng, vars, depth - 1),
                           gen_any(rng, vars, depth - 1));
        case 7:
            return eb::pow(gen_any(rng, vars, depth - 1),
                           gen_any(rng, vars, depth - 1));
        case 8: {
            std::uniform_int_distribution<int> fpick(0, 7);
            return eb::call(static_cast<Expr::Fn>(fpick(rng)),
                            gen_any(rng, vars, depth - 1));
        }
        default: {
            std::uniform_int_distribution<int> cpick(0, 1);
            return cpick(rng) ? eb::pi() : eb::e();
        }
    }
}

/// Smooth-by-construction candidates: guarded log/sqrt/div arguments, scaled
/// exp, integer powers. Rejection in random_expr_safe handles the rest.
Expr gen_safe(std::mt19937& rng, const std::vector<std::string>& vars,
              int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 11);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_int_distribution<int> vpick(0, static_cast<int>(vars.size()) - 1);
    auto sub = [&] { return gen_safe(rng, vars, depth - 1); };
    switch (pick(rng)) {
        case 0: return eb::lit(coef(rng));
        case 1: {
            const int v = vpick(rng);
            return eb::var(v, vars[static_cast<std::size_t>(v)]);
        }
        case 2: return eb::neg(sub());
        case 3: return eb::add(sub(), sub());
        case 4: return eb::sub(sub(), sub());
        case 5: return eb::mul(sub(), sub());
        case 6: {
            // Denominator bounded away from zero.
            Expr d = sub();
            return eb::div(sub(), eb::add(eb::lit(1.5), eb::mul(d, d)));
        }
        case 7: return eb::sin(sub());
        case 8: return eb::cos(sub());
        case 9: {
            std::uniform_int_distribution<int> e(2, 3);
            return eb::pow(sub(), eb::lit(static_cast<double>(e(rng))));
        }
        case 10: {
            std::uniform_int_distribution<int> which(0, 3);
            Expr a = sub();
            switch (which(rng)) {
                case 0: return eb::call(Expr::Fn::Exp, eb::mul(eb::lit(0.3), a));
                case 1:
                    return eb::call(Expr::Fn::Log,
                                    eb::add(eb::lit(1.5), eb::mul(a, a)));
                case 2:
                    return eb::sqrt(eb::add(eb::lit(1.5), eb::mul(a, a)));
                default:
                    return eb::call(Expr::Fn::Sinh, eb::mul(eb::lit(0.3), a));
            }
        }
        default:
            return eb::call(Expr::Fn::Cosh, eb::mul(eb::lit(0.3), sub()));
    }
}

}  // namespace

Expr random_expr_safe(std::mt19937& rng, const std::vector<std::string>& vars,
                      const Vec& point, int max_depth) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Expr e = gen_safe(rng, vars, max_depth);
        try {
            std::vector<Scalar2> env = Scalar2::lift(point);
            Scalar2 v = e.eval(env);
            // Keep the scale sane so the finite-difference comparison is not
            // dominated by roundoff.
            if (std::abs(v.value()) > 5.0) continue;
            if (v.grad().cwiseAbs().maxCoeff() > 100.0) continue;
            if (v.hess().cwiseAbs().maxCoeff() > 1000.0) continue;
            if (e.free_vars(static_cast<int>(vars.size())).empty()) continue;
            return e;
        } catch (const EvalError&) {
            continue;
        }
    }
    throw std::runtime_error("random_expr_safe: rejection sampling exhausted");
}

Expr random_expr_any(std::mt19937& rng, const std::vector<std::string>& vars,
                     int max_depth) {
    return gen_any(rng, vars, max_depth);
}

Vec random_point(std::mt19937& rng, int dim, double lo, double hi) {
    std::uniform_real_distribution<double> unif(lo, hi);
    Vec p(dim);
    for (int i = 0; i < dim; ++i) p[i] = unif(rng);
    return p;
}

}  // namespace warpcurv::test
