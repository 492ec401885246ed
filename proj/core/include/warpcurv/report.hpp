#pragma once

#include <nlohmann/json_fwd.hpp>

#include "warpcurv/scenario.hpp"

namespace warpcurv {

/// Batch evaluation outcome of one scenario. Per-point evaluation errors are
/// collected, not fatal, unless every point fails. Point order follows the
/// sampling order, so identical scenario + seed gives a byte-identical report.
struct RunResult {
    std::string scenario_name;
    std::vector<std::string> var_names;
    int n1 = 0, n2 = 0, ambient_dim = 0;
    std::vector<SlackReport> points;
    struct PointError {
        Vec p;
        std::string message;
    };
    std::vector<PointError> errors;

    double min_upper_slack = 0.0;
    double min_lower_slack = 0.0;
    double min_corollary_margin = 0.0;  // min(corollary - theorem) when present
    bool has_corollaries = false;
    bool slack_ok = false;      // both minima >= -tol.slack
    bool all_finite = false;
    double tol_slack = 0.0;
};

RunResult run_scenario(const Scenario& sc);

/// Restricted curvature-extremes report (the `extremal` verb).
struct ExtremalRunResult {
    std::string scenario_name;
    std::vector<std::string> var_names;
    struct Row {
        Vec p;
        double inf_K = 0.0;
        double sup_K = 0.0;
        bool exact_catalog = false;
    };
    std::vector<Row> rows;
    std::vector<RunResult::PointError> errors;
};
ExtremalRunResult run_extremal(const Scenario& sc);

nlohmann::json to_json(const RunResult& r);
nlohmann::json to_json(const ExtremalRunResult& r);

/// CSV with one row per sample point and the documented column order:
/// point coordinates, delta_f_over_f, H2, h_norm2, inf_K, sup_K, upper_slack,
/// lower_slack, mixed_tg, traces_equal, mixed_planes_extremal.
std::string to_csv(const RunResult& r);
std::string to_csv(const ExtremalRunResult& r);

}  // namespace warpcurv
