#include "warpcurv/scenario.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "warpcurv/errors.hpp"

namespace warpcurv {

using nlohmann::json;

namespace {

Box box_from_json(const json& j, int dim, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ValidationError(std::string(what) +
                              ": box must list one [lo, hi] pair per variable");
    Box box;
    for (const auto& r : j) {
        if (!r.is_array() || r.size() != 2)
            throw ValidationError(std::string(what) + ": malformed box range");
        const double lo = r[0].get<double>();
        const double hi = r[1].get<double>();
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
            throw ValidationError(std::string(what) +
                                  ": box ranges must be finite and nonempty");
        box.ranges.emplace_back(lo, hi);
    }
    return box;
}

struct ChartSpec {
    std::vector<std::string> vars;
    Box box;
    MetricField metric;
};

ChartSpec chart_from_json(const json& j, const char* what) {
    ChartSpec out;
    if (!j.contains("vars") || !j["vars"].is_array() || j["vars"].empty())
        throw ValidationError(std::string(what) + ": needs a nonempty var list");
    for (const auto& v : j["vars"]) out.vars.push_back(v.get<std::string>());
    for (std::size_t i = 0; i < out.vars.size(); ++i)
        for (std::size_t k = i + 1; k < out.vars.size(); ++k)
            if (out.vars[i] == out.vars[k])
                throw ValidationError(std::string(what) + ": duplicate variable '" +
                                      out.vars[i] + "'");
    const int d = static_cast<int>(out.vars.size());
    out.box = box_from_json(j.at("box"), d, what);

    const json& g = j.at("metric");
    if (!g.is_array() || static_cast<int>(g.size()) != d)
        throw ValidationError(std::string(what) + ": metric must be " +
                              std::to_string(d) + "x" + std::to_string(d));
    std::vector<Expr> entries(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        const json& row = g[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw ValidationError(std::string(what) + ": metric row has wrong size");
        for (int k = 0; k < d; ++k)
            entries[static_cast<std::size_t>(i) * d + k] =
                parse(row[static_cast<std::size_t>(k)].get<std::string>(), out.vars);
    }
    // The metric must be given as a symmetric matrix of expressions.
    for (int i = 0; i < d; ++i)
        for (int k = i + 1; k < d; ++k)
            if (!Expr::same(entries[static_cast<std::size_t>(i) * d + k],
                            entries[static_cast<std::size_t>(k) * d + i]))
                throw ValidationError(std::string(what) +
                                      ": metric entries (" + std::to_string(i) +
                                      "," + std::to_string(k) +
                                      ") are not symmetric");
    out.metric = MetricField(out.vars, std::move(entries));
    return out;
}

AmbientSpace ambient_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "euclidean") return make_euclidean(j.at("dim").get<int>());
    if (kind == "space_form") {
        SphereChart chart = SphereChart::Polar;
        if (j.value("chart", "polar") == std::string("conformal"))
            chart = SphereChart::Conformal;
        return make_space_form(j.at("dim").get<int>(),
                               j.at("curvature").get<double>(), chart);
    }
    if (kind == "product_space_forms")
        return make_product_space_forms(j.at("dim1").get<int>(),
                                        j.at("c1").get<double>(),
                                        j.at("dim2").get<int>(),
                                        j.at("c2").get<double>());
    if (kind == "clifford")
        return make_clifford(j.at("m1").get<int>(), j.at("m2").get<int>());
    throw ValidationError("unknown ambient kind '" + kind + "'");
}

Box join_boxes(const Box& a, const Box& b) {
    Box out = a;
    out.ranges.insert(out.ranges.end(), b.ranges.begin(), b.ranges.end());
    return out;
}

/// Five deterministic probe points of a box: the center plus four seeded
/// uniform draws (independent of the user's sampling seed).
std::vector<Vec> probe_points(const Box& box) {
    std::vector<Vec> pts{box.center()};
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int s = 0; s < 4; ++s) {
        Vec p(box.dim());
        for (int i = 0; i < box.dim(); ++i) {
            const auto& [lo, hi] = box.ranges[static_cast<std::size_t>(i)];
            p[i] = lo + (hi - lo) * unif(rng);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

}  // namespace

std::vector<Vec> Scenario::sample_points() const {
    std::vector<Vec> pts;
    const int n = total_box.dim();
    if (sampling.mode == SamplingSpec::Mode::Random) {
        std::mt19937 rng(sampling.seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        pts.reserve(static_cast<std::size_t>(sampling.count));
        for (int s = 0; s < sampling.count; ++s) {
            Vec p(n);
            for (int i = 0; i < n; ++i) {
                const auto& [lo, hi] = total_box.ranges[static_cast<std::size_t>(i)];
                p[i] = lo + (hi - lo) * unif(rng);
            }
            pts.push_back(std::move(p));
        }
        return pts;
    }
    // Grid: the smallest per-axis resolution whose product reaches count.
    int steps = 1;
    while (std::pow(steps, n) < sampling.count && steps < 64) ++steps;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
        Vec p(n);
        for (int i = 0; i < n; ++i) {
            const auto& [lo, hi] = total_box.ranges[static_cast<std::size_t>(i)];
            p[i] = steps == 1 ? 0.5 * (lo + hi)
                              : lo + (hi - lo) * idx[static_cast<std::size_t>(i)] /
                                         (steps - 1);
        }
        pts.push_back(std::move(p));
        int d = 0;
        while (d < n && ++idx[static_cast<std::size_t>(d)] == steps) {
            idx[static_cast<std::size_t>(d)] = 0;
            ++d;
        }
        if (d == n) break;
    }
    return pts;
}

namespace {

/// Validate the assembled scenario: expression-singularity sweep, SPD
/// metrics, immersion dimension checks, isometry spot-check at five points.
Scenario assemble(std::string name, AmbientSpace ambient, WarpedProduct wp,
                  std::vector<Expr> phi, Box base_box, Box fiber_box,
                  SamplingSpec sampling, Tolerances tol) {
    if (static_cast<int>(phi.size()) != ambient.dim())
        throw ValidationError("immersion has " + std::to_string(phi.size()) +
                              " components but the ambient dimension is " +
                              std::to_string(ambient.dim()));

    Scenario sc{std::move(name),    std::move(ambient), std::move(wp),
                ImmersionMap(MetricField(), 0, MetricField(), {}),
                base_box,           fiber_box,
                join_boxes(base_box, fiber_box),
                sampling,           tol};
    sc.imm = ImmersionMap(sc.wp.total(), sc.wp.n1(), sc.ambient.metric,
                          std::move(phi));

    for (const Vec& p : probe_points(sc.total_box)) {
        // Any expression singularity or SPD failure surfaces here as a load
        // error naming the failed invariant.
        MetricJet jet = sc.wp.total().jet(p);
        require_spd(jet.g, p);
        const Vec q = sc.imm.map_point(p);
        require_spd(sc.ambient.metric.value(q), q);
        const double resid = sc.imm.isometry_residual(p);
        if (resid > sc.tol.geometric) {
            std::ostringstream os;
            os << "immersion is not isometric: pullback residual " << resid
               << " at probe point [" << p.transpose() << "]";
            throw ValidationError(os.str());
        }
    }
    return sc;
}

Box angle_box(int d) {
    Box b;
    b.ranges.assign(static_cast<std::size_t>(d), {0.15, M_PI - 0.15});
    return b;
}

MetricField const_diag_metric(const std::vector<std::string>& vars,
                              double value) {
    const int d = static_cast<int>(vars.size());
    std::vector<Expr> entries(static_cast<std::size_t>(d) * d, eb::lit(0.0));
    for (int i = 0; i < d; ++i)
        entries[static_cast<std::size_t>(i) * d + i] = eb::lit(value);
    return MetricField(vars, std::move(entries));
}

}  // namespace

Scenario builtin_circle(double radius) {
    if (!(radius > 0.0)) throw ValidationError("circle: radius must be positive");
    Box base_box;
    base_box.ranges = {{0.1, 6.18}};
    MetricField base = const_diag_metric({"t"}, radius * radius);
    MetricField fiber;  // no fiber: the circle is one-dimensional
    WarpedProduct wp = WarpedProduct::build(base, fiber, eb::lit(1.0), base_box);
    std::vector<Expr> phi = {
        eb::mul(eb::lit(radius), eb::cos(eb::var(0, "t"))),
        eb::mul(eb::lit(radius), eb::sin(eb::var(0, "t")))};
    return assemble("circle", make_euclidean(2), std::move(wp), std::move(phi),
                    base_box, Box{}, SamplingSpec{}, Tolerances{});
}

Scenario builtin_product_torus(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw ValidationError("product_torus: radii must be positive");
    Box base_box, fiber_box;
    base_box.ranges = {{0.1, 6.18}};
    fiber_box.ranges = {{0.1, 6.18}};
    MetricField base = const_diag_metric({"t"}, a * a);
    MetricField fiber = const_diag_metric({"s"}, b * b);
    WarpedProduct wp = WarpedProduct::build(base, fiber, eb::lit(1.0), base_box);
    std::vector<Expr> phi = {
        eb::mul(eb::lit(a), eb::cos(eb::var(0, "t"))),
        eb::mul(eb::lit(a), eb::sin(eb::var(0, "t"))),
        eb::mul(eb::lit(b), eb::cos(eb::var(1, "s"))),
        eb::mul(eb::lit(b), eb::sin(eb::var(1, "s")))};
    return assemble("product_torus", make_euclidean(4), std::move(wp),
                    std::move(phi), base_box, fiber_box, SamplingSpec{},
                    Tolerances{});
}

Scenario builtin_clifford_identity(int m1, int m2, bool embedded) {
    const int m = m1 + m2;
    const double r1 = std::sqrt(static_cast<double>(m1) / m);
    const double r2 = std::sqrt(static_cast<double>(m2) / m);
    MetricField base = sphere_polar_metric(m1, r1, "u");
    MetricField fiber = sphere_polar_metric(m2, r2, "v");
    Box base_box = angle_box(m1);
    Box fiber_box = angle_box(m2);
    WarpedProduct wp = WarpedProduct::build(base, fiber, eb::lit(1.0), base_box);

    if (!embedded) {
        AmbientSpace amb = make_clifford(m1, m2);
        std::vector<Expr> phi;
        const auto& vars = wp.total().vars();
        for (int i = 0; i < m; ++i)
            phi.push_back(eb::var(i, vars[static_cast<std::size_t>(i)]));
        return assemble("clifford_identity", std::move(amb), std::move(wp),
                        std::move(phi), base_box, fiber_box, SamplingSpec{},
                        Tolerances{});
    }
    CliffordEmbedding emb = clifford_embedding(m1, m2);
    return assemble("clifford_embedded", emb.sphere, std::move(wp), emb.phi,
                    base_box, fiber_box, SamplingSpec{}, Tolerances{});
}

Scenario builtin_surface_of_revolution(const std::string& profile, double t_min,
                                       double t_max) {
    if (!(t_min < t_max))
        throw ValidationError("surface_of_revolution: empty parameter range");
    Expr r = parse(profile, {"t"});
    Expr dr = r.derivative(0);
    // Profile (t, r(t) cos s, r(t) sin s): pullback (1 + r'^2) dt^2 + r^2 ds^2.
    MetricField base({"t"}, {eb::add(eb::lit(1.0), eb::mul(dr, dr))});
    MetricField fiber = const_diag_metric({"s"}, 1.0);
    Box base_box, fiber_box;
    base_box.ranges = {{t_min, t_max}};
    fiber_box.ranges = {{0.1, 6.18}};
    WarpedProduct wp = WarpedProduct::build(base, fiber, r, base_box);
    Expr rt = eb::shift_vars(r, 0);
    std::vector<Expr> phi = {eb::var(0, "t"),
                             eb::mul(rt, eb::cos(eb::var(1, "s"))),
                             eb::mul(rt, eb::sin(eb::var(1, "s")))};
    return assemble("surface_of_revolution", make_euclidean(3), std::move(wp),
                    std::move(phi), base_box, fiber_box, SamplingSpec{},
                    Tolerances{});
}

Scenario builtin_equator(double radius) {
    if (!(radius > 0.0)) throw ValidationError("equator: radius must be positive");
    const double r = radius;
    // S^2(r) as the sin-warped product, sitting as the totally geodesic
    // equator {theta_3 = pi/2} of S^3(r).
    MetricField base = const_diag_metric({"t"}, r * r);
    MetricField fiber = const_diag_metric({"s"}, 1.0);
    Box base_box, fiber_box;
    base_box.ranges = {{0.35, M_PI - 0.35}};
    fiber_box.ranges = {{0.15, 6.13}};
    Expr warp = eb::mul(eb::lit(r), eb::sin(eb::var(0, "t")));
    WarpedProduct wp = WarpedProduct::build(base, fiber, warp, base_box);
    AmbientSpace amb = make_space_form(3, 1.0 / (r * r));
    std::vector<Expr> phi = {eb::var(0, "t"), eb::var(1, "s"),
                             eb::mul(eb::lit(0.5), eb::pi())};
    return assemble("equator", std::move(amb), std::move(wp), std::move(phi),
                    base_box, fiber_box, SamplingSpec{}, Tolerances{});
}

Scenario builtin_sphere_umbilic(double colatitude) {
    if (!(colatitude > 0.0) || !(colatitude < M_PI))
        throw ValidationError("sphere_umbilic: colatitude must lie in (0, pi)");
    const double sc = std::sin(colatitude);
    // Geodesic 2-sphere {theta_1 = c} of S^3(1): intrinsic radius sin(c),
    // umbilic with principal curvature cot(c).
    MetricField base = const_diag_metric({"t"}, sc * sc);
    MetricField fiber = const_diag_metric({"s"}, 1.0);
    Box base_box, fiber_box;
    base_box.ranges = {{0.35, M_PI - 0.35}};
    fiber_box.ranges = {{0.15, 6.13}};
    Expr warp = eb::mul(eb::lit(sc), eb::sin(eb::var(0, "t")));
    WarpedProduct wp = WarpedProduct::build(base, fiber, warp, base_box);
    AmbientSpace amb = make_space_form(3, 1.0);
    std::vector<Expr> phi = {eb::lit(colatitude), eb::var(0, "t"),
                             eb::var(1, "s")};
    return assemble("sphere_umbilic", std::move(amb), std::move(wp),
                    std::move(phi), base_box, fiber_box, SamplingSpec{},
                    Tolerances{});
}

Scenario load_scenario(const json& j) {
    SamplingSpec sampling;
    if (j.contains("sampling")) {
        const json& s = j["sampling"];
        const std::string mode = s.value("mode", "random");
        if (mode == "grid")
            sampling.mode = SamplingSpec::Mode::Grid;
        else if (mode == "random")
            sampling.mode = SamplingSpec::Mode::Random;
        else
            throw ValidationError("sampling mode must be 'grid' or 'random'");
        sampling.count = s.value("count", 50);
        sampling.seed = s.value("seed", 1u);
        if (sampling.count < 1)
            throw ValidationError("sampling count must be positive");
    }
    Tolerances tol;
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        tol.slack = t.value("slack", tol.slack);
        tol.geometric = t.value("geometric", tol.geometric);
        tol.equality = t.value("equality", tol.equality);
    }

    const json& im = j.at("immersion");
    if (im.contains("builtin")) {
        if (j.contains("base") || j.contains("fiber") || j.contains("warp") ||
            j.contains("ambient"))
            throw ValidationError(
                "builtin immersions define the whole scenario; drop the "
                "explicit base/fiber/warp/ambient blocks");
        const std::string name = im["builtin"].get<std::string>();
        const json params = im.value("params", json::object());
        Scenario sc = [&] {
            if (name == "circle") return builtin_circle(params.value("radius", 1.0));
            if (name == "product_torus")
                return builtin_product_torus(params.value("a", 1.0),
                                             params.value("b", 1.0));
            if (name == "clifford_identity")
                return builtin_clifford_identity(params.value("m1", 2),
                                                 params.value("m2", 2),
                                                 params.value("embedded", false));
            if (name == "surface_of_revolution")
                return builtin_surface_of_revolution(
                    params.value("profile", "2 + sin(t)"),
                    params.value("t_min", 0.0), params.value("t_max", 3.0));
            if (name == "equator") return builtin_equator(params.value("radius", 1.0));
            if (name == "sphere_umbilic")
                return builtin_sphere_umbilic(params.value("colatitude", 0.8));
            throw ValidationError("unknown builtin immersion '" + name + "'");
        }();
        sc.sampling = sampling;
        sc.tol = tol;
        if (j.contains("name")) sc.name = j["name"].get<std::string>();
        return sc;
    }

    AmbientSpace ambient = ambient_from_json(j.at("ambient"));
    ChartSpec base = chart_from_json(j.at("base"), "base");
    ChartSpec fiber = chart_from_json(j.at("fiber"), "fiber");
    Expr warp = parse(j.at("warp").get<std::string>(), base.vars);

    WarpedProduct wp =
        WarpedProduct::build(base.metric, fiber.metric, warp, base.box);

    if (!im.contains("components"))
        throw ValidationError(
            "immersion needs either a builtin name or a component list");
    std::vector<std::string> total_vars = wp.total().vars();
    std::vector<Expr> phi;
    for (const auto& c : im["components"])
        phi.push_back(parse(c.get<std::string>(), total_vars));

    return assemble(j.value("name", std::string("scenario")), std::move(ambient),
                    std::move(wp), std::move(phi), base.box, fiber.box, sampling,
                    tol);
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("scenario file '" + path + "': " + e.what());
    }
    try {
        return load_scenario(j);
    } catch (const json::exception& e) {
        throw ValidationError("scenario file '" + path + "': " + e.what());
    }
}

}  // namespace warpcurv
