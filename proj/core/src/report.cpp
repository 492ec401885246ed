#include "warpcurv/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <nlohmann/json.hpp>

#include "warpcurv/errors.hpp"

namespace warpcurv {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool report_finite(const SlackReport& r) {
    for (int i = 0; i < r.p.size(); ++i)
        if (!std::isfinite(r.p[i])) return false;
    const double vals[] = {r.delta_f_over_f, r.H2,          r.h_norm2,
                           r.inf_K,          r.sup_K,       r.upper_slack,
                           r.lower_slack,    r.isometry_residual};
    for (double v : vals)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

RunResult run_scenario(const Scenario& sc) {
    RunResult out;
    out.scenario_name = sc.name;
    out.var_names = sc.wp.total().vars();
    out.n1 = sc.wp.n1();
    out.n2 = sc.wp.n2();
    out.ambient_dim = sc.ambient.dim();
    out.tol_slack = sc.tol.slack;

    const std::vector<Vec> pts = sc.sample_points();
    out.min_upper_slack = std::numeric_limits<double>::infinity();
    out.min_lower_slack = std::numeric_limits<double>::infinity();
    out.min_corollary_margin = std::numeric_limits<double>::infinity();
    out.all_finite = true;

    for (const Vec& p : pts) {
        try {
            SlackReport r = compute_slacks(sc.wp, sc.imm, sc.ambient, p, sc.tol);
            out.min_upper_slack = std::min(out.min_upper_slack, r.upper_slack);
            out.min_lower_slack = std::min(out.min_lower_slack, r.lower_slack);
            if (r.has_corollaries) {
                out.has_corollaries = true;
                out.min_corollary_margin = std::min(
                    {out.min_corollary_margin,
                     r.corollary_upper_slack - r.upper_slack,
                     r.corollary_lower_slack - r.lower_slack});
            }
            out.all_finite = out.all_finite && report_finite(r);
            out.points.push_back(std::move(r));
        } catch (const std::exception& e) {
            out.errors.push_back({p, e.what()});
        }
    }
    if (out.points.empty() && !out.errors.empty())
        throw EvalError("run", 0.0,
                        "every sample point failed; first error: " +
                            out.errors.front().message);
    out.slack_ok = out.min_upper_slack >= -sc.tol.slack &&
                   out.min_lower_slack >= -sc.tol.slack;
    return out;
}

ExtremalRunResult run_extremal(const Scenario& sc) {
    ExtremalRunResult out;
    out.scenario_name = sc.name;
    out.var_names = sc.wp.total().vars();
    for (const Vec& p : sc.sample_points()) {
        try {
            ImmersionPointData d = immersion_at(sc.imm, p);
            ExtremalK ext =
                extremal_sectional(sc.ambient, d.q, d.tangent_ambient);
            out.rows.push_back({p, ext.inf_val, ext.sup_val,
                                ext.method == ExtremalK::Method::ExactCatalog});
        } catch (const std::exception& e) {
            out.errors.push_back({p, e.what()});
        }
    }
    if (out.rows.empty() && !out.errors.empty())
        throw EvalError("extremal", 0.0,
                        "every sample point failed; first error: " +
                            out.errors.front().message);
    return out;
}

json to_json(const RunResult& r) {
    json points = json::array();
    for (const SlackReport& s : r.points) {
        json p = json::array();
        for (int i = 0; i < s.p.size(); ++i) p.push_back(s.p[i]);
        json row = {
            {"point", p},
            {"delta_f_over_f", s.delta_f_over_f},
            {"H2", s.H2},
            {"h_norm2", s.h_norm2},
            {"inf_K", s.inf_K},
            {"sup_K", s.sup_K},
            {"upper_slack", s.upper_slack},
            {"lower_slack", s.lower_slack},
            {"mixed_tg", s.diagnostics.mixed_tg},
            {"traces_equal", s.diagnostics.traces_equal},
            {"mixed_planes_extremal", s.diagnostics.mixed_planes_extremal},
            {"isometry_residual", s.isometry_residual},
        };
        if (s.has_corollaries) {
            row["corollary_upper_slack"] = s.corollary_upper_slack;
            row["corollary_lower_slack"] = s.corollary_lower_slack;
        }
        points.push_back(std::move(row));
    }
    json errors = json::array();
    for (const auto& e : r.errors) {
        json p = json::array();
        for (int i = 0; i < e.p.size(); ++i) p.push_back(e.p[i]);
        errors.push_back({{"point", p}, {"error", e.message}});
    }
    json summary = {
        {"points_evaluated", r.points.size()},
        {"point_errors", r.errors.size()},
        {"min_upper_slack", r.min_upper_slack},
        {"min_lower_slack", r.min_lower_slack},
        {"slack_ok", r.slack_ok},
        {"all_finite", r.all_finite},
        {"tol_slack", r.tol_slack},
    };
    if (r.has_corollaries)
        summary["min_corollary_margin"] = r.min_corollary_margin;
    return json{{"scenario", r.scenario_name},
                {"vars", r.var_names},
                {"n1", r.n1},
                {"n2", r.n2},
                {"ambient_dim", r.ambient_dim},
                {"points", std::move(points)},
                {"errors", std::move(errors)},
                {"summary", std::move(summary)}};
}

json to_json(const ExtremalRunResult& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json p = json::array();
        for (int i = 0; i < row.p.size(); ++i) p.push_back(row.p[i]);
        rows.push_back({{"point", p},
                        {"inf_K", row.inf_K},
                        {"sup_K", row.sup_K},
                        {"exact_catalog", row.exact_catalog}});
    }
    json errors = json::array();
    for (const auto& e : r.errors) {
        json p = json::array();
        for (int i = 0; i < e.p.size(); ++i) p.push_back(e.p[i]);
        errors.push_back({{"point", p}, {"error", e.message}});
    }
    return json{{"scenario", r.scenario_name},
                {"vars", r.var_names},
                {"points", std::move(rows)},
                {"errors", std::move(errors)}};
}

std::string to_csv(const RunResult& r) {
    std::string out;
    for (const auto& v : r.var_names) {
        out += v;
        out += ',';
    }
    out +=
        "delta_f_over_f,H2,h_norm2,inf_K,sup_K,upper_slack,lower_slack,"
        "mixed_tg,traces_equal,mixed_planes_extremal\n";
    for (const SlackReport& s : r.points) {
        for (int i = 0; i < s.p.size(); ++i) {
            out += fmt(s.p[i]);
            out += ',';
        }
        out += fmt(s.delta_f_over_f);
        out += ',';
        out += fmt(s.H2);
        out += ',';
        out += fmt(s.h_norm2);
        out += ',';
        out += fmt(s.inf_K);
        out += ',';
        out += fmt(s.sup_K);
        out += ',';
        out += fmt(s.upper_slack);
        out += ',';
        out += fmt(s.lower_slack);
        out += ',';
        out += s.diagnostics.mixed_tg ? "1" : "0";
        out += ',';
        out += s.diagnostics.traces_equal ? "1" : "0";
        out += ',';
        out += s.diagnostics.mixed_planes_extremal ? "1" : "0";
        out += '\n';
    }
    return out;
}

std::string to_csv(const ExtremalRunResult& r) {
    std::string out;
    for (const auto& v : r.var_names) {
        out += v;
        out += ',';
    }
    out += "inf_K,sup_K,exact_catalog\n";
    for (const auto& row : r.rows) {
        for (int i = 0; i < row.p.size(); ++i) {
            out += fmt(row.p[i]);
            out += ',';
        }
        out += fmt(row.inf_K);
        out += ',';
        out += fmt(row.sup_K);
        out += ',';
        out += row.exact_catalog ? "1" : "0";
        out += '\n';
    }
    return out;
}

}  // namespace warpcurv
