#include "warpcurv/ambient.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "warpcurv/errors.hpp"

namespace warpcurv {

namespace {

std::vector<std::string> prefixed_vars(int d, const std::string& prefix) {
    std::vector<std::string> vars;
    vars.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) vars.push_back(prefix + std::to_string(i + 1));
    return vars;
}

MetricField diag_metric(std::vector<std::string> vars, std::vector<Expr> diag) {
    const int d = static_cast<int>(vars.size());
    std::vector<Expr> entries(static_cast<std::size_t>(d) * d, eb::lit(0.0));
    for (int i = 0; i < d; ++i)
        entries[static_cast<std::size_t>(i) * d + i] =
            diag[static_cast<std::size_t>(i)];
    return MetricField(std::move(vars), std::move(entries));
}

/// Conformal chart of the space form of curvature c:
/// g_ij = delta_ij / (1 + (c/4) |x|^2)^2.
MetricField conformal_metric(int d, double c, const std::string& prefix) {
    std::vector<std::string> vars = prefixed_vars(d, prefix);
    Expr sum = eb::lit(1.0);
    for (int i = 0; i < d; ++i) {
        Expr xi = eb::var(i, vars[static_cast<std::size_t>(i)]);
        sum = eb::add(sum, eb::mul(eb::lit(c / 4.0), eb::mul(xi, xi)));
    }
    Expr den = eb::mul(sum, sum);
    std::vector<Expr> diag(static_cast<std::size_t>(d),
                           eb::div(eb::lit(1.0), den));
    return diag_metric(std::move(vars), std::move(diag));
}

MetricField factor_metric(int d, double c, const std::string& prefix) {
    if (d == 1) {
        if (c != 0.0)
            throw ValidationError(
                "a one-dimensional factor has no curvature; use c = 0");
        return diag_metric(prefixed_vars(1, prefix), {eb::lit(1.0)});
    }
    if (c == 0.0) {
        std::vector<Expr> diag(static_cast<std::size_t>(d), eb::lit(1.0));
        return diag_metric(prefixed_vars(d, prefix), std::move(diag));
    }
    if (c > 0.0) return sphere_polar_metric(d, 1.0 / std::sqrt(c), prefix);
    return conformal_metric(d, c, prefix);
}

/// Block sum of two metrics over disjoint variable lists.
MetricField block_metric(const MetricField& a, const MetricField& b) {
    const int da = a.dim(), db = b.dim(), d = da + db;
    std::vector<std::string> vars = a.vars();
    vars.insert(vars.end(), b.vars().begin(), b.vars().end());
    std::vector<Expr> entries(static_cast<std::size_t>(d) * d, eb::lit(0.0));
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            entries[static_cast<std::size_t>(i) * d + j] = a.entry(i, j);
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j)
            entries[static_cast<std::size_t>(da + i) * d + (da + j)] =
                eb::shift_vars(b.entry(i, j), da);
    return MetricField(std::move(vars), std::move(entries));
}

}  // namespace

MetricField sphere_polar_metric(int d, double radius,
                                const std::string& var_prefix) {
    if (d < 1) throw ValidationError("sphere dimension must be positive");
    std::vector<std::string> vars = prefixed_vars(d, var_prefix);
    std::vector<Expr> diag;
    diag.reserve(static_cast<std::size_t>(d));
    Expr r2 = eb::lit(radius * radius);
    for (int i = 0; i < d; ++i) {
        Expr gii = r2;
        for (int j = 0; j < i; ++j) {
            Expr s = eb::sin(eb::var(j, vars[static_cast<std::size_t>(j)]));
            gii = eb::mul(gii, eb::mul(s, s));
        }
        diag.push_back(gii);
    }
    return diag_metric(std::move(vars), std::move(diag));
}

std::vector<Expr> unit_sphere_coords(int d, int var_offset,
                                     const std::vector<std::string>& vars) {
    std::vector<Expr> out;
    out.reserve(static_cast<std::size_t>(d) + 1);
    auto angle = [&](int j) {
        return eb::var(var_offset + j,
                       vars[static_cast<std::size_t>(var_offset + j)]);
    };
    for (int k = 0; k < d; ++k) {
        Expr c = eb::cos(angle(k));
        for (int j = k - 1; j >= 0; --j) c = eb::mul(eb::sin(angle(j)), c);
        out.push_back(c);
    }
    Expr last = eb::sin(angle(d - 1));
    for (int j = d - 2; j >= 0; --j) last = eb::mul(eb::sin(angle(j)), last);
    out.push_back(last);
    return out;
}

double AmbientSpace::catalog_inf() const {
    if (!exact_K_values) throw ValidationError("no catalog curvature set");
    return *std::min_element(exact_K_values->begin(), exact_K_values->end());
}

double AmbientSpace::catalog_sup() const {
    if (!exact_K_values) throw ValidationError("no catalog curvature set");
    return *std::max_element(exact_K_values->begin(), exact_K_values->end());
}

AmbientSpace make_euclidean(int dim) {
    if (dim < 1) throw ValidationError("euclidean dimension must be positive");
    AmbientSpace a;
    a.kind = AmbientSpace::Kind::Euclidean;
    a.metric = euclidean_metric(dim);
    a.exact_K_values = std::vector<double>{0.0};
    return a;
}

AmbientSpace make_space_form(int dim, double curvature, SphereChart chart) {
    if (dim < 2)
        throw ValidationError("space form dimension must be at least 2");
    AmbientSpace a;
    a.kind = AmbientSpace::Kind::SpaceForm;
    a.curvature = curvature;
    a.c_min = curvature;
    a.c_max = curvature;
    a.exact_K_values = std::vector<double>{curvature};
    if (curvature == 0.0) {
        a.metric = euclidean_metric(dim);
    } else if (curvature > 0.0 && chart == SphereChart::Polar) {
        a.metric = sphere_polar_metric(dim, 1.0 / std::sqrt(curvature));
    } else {
        a.metric = conformal_metric(dim, curvature, "x");
    }
    return a;
}

AmbientSpace make_product_space_forms(int dim1, double c1, int dim2, double c2) {
    if (dim1 < 1 || dim2 < 1)
        throw ValidationError("product factors must have positive dimension");
    AmbientSpace a;
    a.kind = AmbientSpace::Kind::ProductSpaceForms;
    a.dim1 = dim1;
    a.dim2 = dim2;
    a.c1 = c1;
    a.c2 = c2;
    a.metric = block_metric(factor_metric(dim1, c1, "u"),
                            factor_metric(dim2, c2, "v"));
    a.c_min = std::min({c1, c2, 0.0});
    a.c_max = std::max({c1, c2, 0.0});
    std::vector<double> ks;
    if (dim1 >= 2) ks.push_back(c1);
    if (dim2 >= 2) ks.push_back(c2);
    ks.push_back(0.0);  // mixed planes
    a.exact_K_values = std::move(ks);
    return a;
}

AmbientSpace make_clifford(int m1, int m2) {
    const int m = m1 + m2;
    if (m1 < 2 || m2 < 2 || m < 4)
        throw ValidationError(
            "clifford torus requires m = m1+m2 >= 4 and 2 <= m1 <= m-2");
    AmbientSpace a;
    a.kind = AmbientSpace::Kind::Clifford;
    a.m1 = m1;
    a.m2 = m2;
    const double r1 = std::sqrt(static_cast<double>(m1) / m);
    const double r2 = std::sqrt(static_cast<double>(m2) / m);
    a.metric = block_metric(sphere_polar_metric(m1, r1, "u"),
                            sphere_polar_metric(m2, r2, "v"));
    a.exact_K_values = std::vector<double>{
        0.0, static_cast<double>(m) / m1, static_cast<double>(m) / m2};
    a.c_min = 0.0;
    a.c_max = static_cast<double>(m) / std::min(m1, m2);
    return a;
}

CliffordEmbedding clifford_embedding(int m1, int m2) {
    const int m = m1 + m2;
    AmbientSpace torus = make_clifford(m1, m2);
    const double r1 = std::sqrt(static_cast<double>(m1) / m);
    const double r2 = std::sqrt(static_cast<double>(m2) / m);

    CliffordEmbedding emb;
    emb.intrinsic = torus.metric;
    emb.sphere = make_space_form(m + 1, 1.0, SphereChart::Conformal);

    const auto& vars = emb.intrinsic.vars();
    std::vector<Expr> U = unit_sphere_coords(m1, 0, vars);
    std::vector<Expr> V = unit_sphere_coords(m2, m1, vars);
    std::vector<Expr> X;
    X.reserve(static_cast<std::size_t>(m) + 2);
    for (const Expr& u : U) X.push_back(eb::mul(eb::lit(r1), u));
    for (const Expr& v : V) X.push_back(eb::mul(eb::lit(r2), v));

    // Stereographic chart coordinates x_i = 2 X_i / (1 + X_{m+2}).
    Expr denom = eb::add(eb::lit(1.0), X.back());
    for (int i = 0; i < m + 1; ++i)
        emb.phi.push_back(
            eb::div(eb::mul(eb::lit(2.0), X[static_cast<std::size_t>(i)]), denom));

    emb.chart_box.ranges.assign(static_cast<std::size_t>(m),
                                {0.15, M_PI - 0.15});
    return emb;
}

CliffordFacts clifford_facts(int m1, int m2) {
    const int m = m1 + m2;
    if (m1 < 2 || m2 < 2)
        throw ValidationError("clifford torus requires m1, m2 >= 2");
    CliffordFacts f;
    f.m1 = m1;
    f.m2 = m2;
    f.m = m;
    const double lam = std::sqrt(static_cast<double>(m2) / m1);
    const double mu = -std::sqrt(static_cast<double>(m1) / m2);
    f.principal.assign(static_cast<std::size_t>(m1), lam);
    f.principal.insert(f.principal.end(), static_cast<std::size_t>(m2), mu);
    std::sort(f.principal.begin(), f.principal.end());
    f.h_norm2 = static_cast<double>(m);
    f.H2 = 0.0;
    f.tau = 0.5 * m * (m - 2);
    f.K_values = {0.0, static_cast<double>(m) / m1,
                  static_cast<double>(m) / m2};
    return f;
}

CliffordNumeric clifford_extrinsic(int m1, int m2, int samples, unsigned seed) {
    const int m = m1 + m2;
    const int n = m;  // torus dimension equals its chart dimension
    CliffordEmbedding emb = clifford_embedding(m1, m2);
    ImmersionMap imm(emb.intrinsic, m1, emb.sphere.metric, emb.phi);
    CliffordFacts want = clifford_facts(m1, m2);

    CliffordNumeric out;
    out.computed = want;
    out.computed.principal.clear();

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto sample_point = [&]() {
        Vec p(n);
        for (int i = 0; i < n; ++i) {
            const auto& [lo, hi] = emb.chart_box.ranges[static_cast<std::size_t>(i)];
            p[i] = lo + (hi - lo) * unif(rng);
        }
        return p;
    };

    std::vector<double> expect = want.principal;
    std::vector<double> expect_neg(expect.size());
    std::transform(expect.begin(), expect.end(), expect_neg.rbegin(),
                   [](double v) { return -v; });
    std::sort(expect_neg.begin(), expect_neg.end());

    for (int s = 0; s < samples; ++s) {
        const Vec p = sample_point();
        ImmersionPointData d = immersion_at(imm, p);
        out.isometry_residual =
            std::max(out.isometry_residual, d.isometry_residual);

        // Codimension one: the shape operator in the orthonormal tangent
        // frame is the single h matrix; its eigenvalues are the principal
        // curvatures. The Gram-Schmidt normal orientation is arbitrary, so
        // compare against both signs of the closed-form multiset.
        Eigen::SelfAdjointEigenSolver<Mat> eig(d.h[0]);
        std::vector<double> pc(eig.eigenvalues().data(),
                               eig.eigenvalues().data() + n);
        std::sort(pc.begin(), pc.end());
        double dev = 0.0, dev_neg = 0.0;
        for (int i = 0; i < n; ++i) {
            dev = std::max(dev, std::abs(pc[static_cast<std::size_t>(i)] -
                                         expect[static_cast<std::size_t>(i)]));
            dev_neg = std::max(dev_neg,
                               std::abs(pc[static_cast<std::size_t>(i)] -
                                        expect_neg[static_cast<std::size_t>(i)]));
        }
        if (dev_neg < dev) {
            dev = dev_neg;
            for (double& v : pc) v = -v;
            std::sort(pc.begin(), pc.end());
        }
        out.principal_dev = std::max(out.principal_dev, dev);
        if (s == 0) out.computed.principal = pc;

        SffNorms norms = sff_norms(d, m1);
        out.h_norm2_dev =
            std::max(out.h_norm2_dev, std::abs(norms.h_norm2 - want.h_norm2));
        out.H2_dev = std::max(out.H2_dev, std::abs(d.H2 - want.H2));
        if (s == 0) {
            out.computed.h_norm2 = norms.h_norm2;
            out.computed.H2 = d.H2;
        }

        // Scalar curvature recovered from the embedding through the
        // contracted Gauss identity: 2 tau = sum Kbar + n^2 H^2 - ||h||^2.
        GaussCheck gc = gauss_residual(imm, d);
        const double tau_ext =
            0.5 * (gc.sum_kbar + static_cast<double>(n) * n * d.H2 -
                   norms.h_norm2);
        out.tau_dev = std::max(out.tau_dev, std::abs(tau_ext - want.tau));
        out.gauss_residual = std::max(out.gauss_residual, gc.max_residual);
        if (s == 0) out.computed.tau = tau_ext;

        // The three attainable curvature values, on coordinate planes of the
        // intrinsic chart: factor-1 planes, factor-2 planes, mixed planes.
        CurvatureAtPoint cp = curvature_at(emb.intrinsic, p);
        Mat frame = gram_schmidt(cp.g, Mat::Identity(n, n));
        const double k1 = sectional(cp, frame.col(0), frame.col(1));
        const double k2 = sectional(cp, frame.col(m1), frame.col(m1 + 1));
        const double k0 = sectional(cp, frame.col(0), frame.col(m1));
        out.K_value_dev = std::max(
            {out.K_value_dev, std::abs(k0 - 0.0),
             std::abs(k1 - static_cast<double>(m) / m1),
             std::abs(k2 - static_cast<double>(m) / m2)});
        if (s == 0) out.computed.K_values = {k0, k1, k2};
    }
    return out;
}

RicciBound ricci_bound_check(int m1, int m2, double x, double y) {
    if (std::abs(x * x + y * y - 1.0) > 1e-12)
        throw ValidationError("ricci_bound_check: (x, y) must be unit");
    const int m = m1 + m2;
    RicciBound out;
    const double a = static_cast<double>(m2) / m1;
    const double b = static_cast<double>(m1) / m2;
    out.ric = m - 1 -
              (a * x * x + b * y * y +
               (static_cast<double>(m) * m / (static_cast<double>(m1) * m2)) *
                   x * x * y * y);
    out.bound = m - 1 - (a + b);
    out.is_equality = std::abs(out.ric - out.bound) < 1e-9;
    return out;
}

ExtremalK extremal_sectional(const AmbientSpace& ambient, const Vec& p,
                             const Mat& subspace, const ExtremalOptions& opts) {
    if (subspace.cols() < 2)
        throw ValidationError("extremal_sectional: subspace dimension < 2");
    if (ambient.has_catalog_extremes() &&
        subspace.cols() == ambient.dim()) {
        ExtremalK out;
        out.inf_val = ambient.catalog_inf();
        out.sup_val = ambient.catalog_sup();
        out.method = ExtremalK::Method::ExactCatalog;
        return out;
    }
    CurvatureAtPoint cp = curvature_at(ambient.metric, p);
    return extremal_numeric(cp, subspace, opts);
}

}  // namespace warpcurv
