// warpcurv: batch verification of warped-product curvature bounds.
//
// Verbs:
//   verify   <scenario.json>   per-point slack report for both bounds
//   extremal <scenario.json>   restricted inf/sup of ambient curvature
//   catalog clifford           extrinsic golden record of the Clifford torus
//   lemma                      fuzzing of the quadratic trace lemma
//
// Exit codes: 0 all checks pass, 1 validation failure, 2 slack or check
// violation beyond tolerance, 3 evaluation error.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>

#include "warpcurv/report.hpp"

using namespace warpcurv;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitValidation = 1;
constexpr int kExitViolation = 2;
constexpr int kExitEvalError = 3;

struct OutputOpts {
    std::string format = "json";
    std::string out_path;
};

void write_output(const OutputOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out) throw ValidationError("cannot write to '" + opts.out_path + "'");
    out << text;
}

void apply_overrides(Scenario& sc, int samples, long long seed, double tol_slack) {
    if (samples > 0) sc.sampling.count = samples;
    if (seed >= 0) sc.sampling.seed = static_cast<unsigned>(seed);
    if (tol_slack > 0) sc.tol.slack = tol_slack;
}

int cmd_verify(const std::string& path, const OutputOpts& opts, int samples,
               long long seed, double tol_slack) {
    Scenario sc = load_scenario_file(path);
    apply_overrides(sc, samples, seed, tol_slack);
    RunResult r = run_scenario(sc);

    write_output(opts, opts.format == "csv" ? to_csv(r) : to_json(r).dump(2));

    std::cerr << "verify " << r.scenario_name << ": " << r.points.size()
              << " points, " << r.errors.size() << " errors, min upper slack "
              << r.min_upper_slack << ", min lower slack " << r.min_lower_slack
              << (r.slack_ok ? " [ok]" : " [VIOLATION]") << "\n";
    if (!r.all_finite) {
        std::cerr << "verify: non-finite value in report\n";
        return kExitEvalError;
    }
    if (!r.slack_ok) return kExitViolation;
    if (r.points.empty()) return kExitEvalError;
    return kExitPass;
}

int cmd_extremal(const std::string& path, const OutputOpts& opts, int samples,
                 long long seed) {
    Scenario sc = load_scenario_file(path);
    apply_overrides(sc, samples, seed, -1.0);
    ExtremalRunResult r = run_extremal(sc);
    write_output(opts, opts.format == "csv" ? to_csv(r) : to_json(r).dump(2));
    return r.rows.empty() ? kExitEvalError : kExitPass;
}

int cmd_catalog_clifford(int m1, int m2, const OutputOpts& opts) {
    CliffordFacts facts = clifford_facts(m1, m2);
    CliffordNumeric num = clifford_extrinsic(m1, m2);

    json principal = json::array();
    for (double v : facts.principal) principal.push_back(v);
    json recomputed = json::array();
    for (double v : num.computed.principal) recomputed.push_back(v);
    json doc = {
        {"m1", m1},
        {"m2", m2},
        {"m", facts.m},
        {"principal_curvatures", principal},
        {"h_norm2", facts.h_norm2},
        {"H2", facts.H2},
        {"tau", facts.tau},
        {"sectional_values", {0.0, facts.K_values[1], facts.K_values[2]}},
        {"numeric",
         {{"principal_curvatures", recomputed},
          {"h_norm2", num.computed.h_norm2},
          {"H2", num.computed.H2},
          {"tau", num.computed.tau},
          {"principal_dev", num.principal_dev},
          {"h_norm2_dev", num.h_norm2_dev},
          {"H2_dev", num.H2_dev},
          {"tau_dev", num.tau_dev},
          {"K_value_dev", num.K_value_dev},
          {"gauss_residual", num.gauss_residual},
          {"isometry_residual", num.isometry_residual}}},
    };
    write_output(opts, doc.dump(2));

    const double worst =
        std::max({num.principal_dev, num.h_norm2_dev, num.H2_dev, num.tau_dev,
                  num.K_value_dev});
    std::cerr << "catalog clifford(" << m1 << "," << m2
              << "): worst deviation from closed forms " << worst << "\n";
    return worst <= 1e-6 ? kExitPass : kExitViolation;
}

int cmd_lemma(int n, int trials, unsigned seed) {
    if (n < 2) throw ValidationError("lemma: need n >= 2");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    int conclusion_failures = 0;
    int equality_mismatches = 0;
    int equalities = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> a(static_cast<std::size_t>(n));
        for (double& v : a) v = unif(rng);
        double sum = 0.0, sum2 = 0.0;
        for (double v : a) {
            sum += v;
            sum2 += v * v;
        }
        // Solve the hypothesis for c, then check the conclusion.
        const double c = sum * sum / (n - 1.0) - sum2;
        LemmaResult r = lemma_check(a, c);
        if (!r.holds_hypothesis || !r.applicable) {
            ++conclusion_failures;
            continue;
        }
        if (!r.holds_conclusion) ++conclusion_failures;
        if (r.is_equality != r.condition_holds) ++equality_mismatches;
        if (r.is_equality) ++equalities;
    }
    std::cout << "lemma n=" << n << " trials=" << trials
              << " conclusion_failures=" << conclusion_failures
              << " equality_mismatches=" << equality_mismatches
              << " equalities=" << equalities << "\n";
    return (conclusion_failures == 0 && equality_mismatches == 0)
               ? kExitPass
               : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical curvature bounds for immersed warped products"};
    app.require_subcommand(1);

    std::string scenario_path;
    OutputOpts opts;
    int samples = -1;
    long long seed = -1;
    double tol_slack = -1.0;

    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--format", opts.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", opts.out_path, "write the report to a file");
    };

    CLI::App* verify = app.add_subcommand("verify", "full slack report");
    verify->add_option("scenario", scenario_path, "scenario JSON file")
        ->required();
    verify->add_option("--samples", samples, "override sample count");
    verify->add_option("--seed", seed, "override sampling seed");
    verify->add_option("--tol-slack", tol_slack, "override slack tolerance");
    add_output_flags(verify);

    CLI::App* extremal = app.add_subcommand(
        "extremal", "restricted inf/sup of ambient sectional curvature");
    extremal->add_option("scenario", scenario_path, "scenario JSON file")
        ->required();
    extremal->add_option("--samples", samples, "override sample count");
    extremal->add_option("--seed", seed, "override sampling seed");
    add_output_flags(extremal);

    CLI::App* catalog = app.add_subcommand("catalog", "golden catalog records");
    int m1 = 2, m2 = 2;
    CLI::App* clifford = catalog->add_subcommand(
        "clifford", "Clifford torus extrinsic record, closed form vs numeric");
    clifford->add_option("--m1", m1, "first factor dimension")->required();
    clifford->add_option("--m2", m2, "second factor dimension")->required();
    add_output_flags(clifford);
    catalog->require_subcommand(1);

    CLI::App* lemma = app.add_subcommand("lemma", "quadratic lemma fuzzing");
    int lemma_n = 3, lemma_trials = 10000;
    unsigned lemma_seed = 1;
    lemma->add_option("--n", lemma_n, "vector length (>= 2)");
    lemma->add_option("--trials", lemma_trials, "number of random vectors");
    lemma->add_option("--seed", lemma_seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed())
            return cmd_verify(scenario_path, opts, samples, seed, tol_slack);
        if (extremal->parsed())
            return cmd_extremal(scenario_path, opts, samples, seed);
        if (catalog->parsed()) return cmd_catalog_clifford(m1, m2, opts);
        if (lemma->parsed()) return cmd_lemma(lemma_n, lemma_trials, lemma_seed);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEvalError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitEvalError;
    }
    return kExitValidation;
}
