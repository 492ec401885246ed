#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "warpcurv/chen.hpp"

namespace warpcurv {

struct SamplingSpec {
    enum class Mode { Grid, Random };
    Mode mode = Mode::Random;
    int count = 50;
    unsigned seed = 1;
};

/// A fully validated verification scenario: ambient space, warped-product
/// domain with chart boxes, isometric immersion, sampling plan and tolerance
/// overrides.
struct Scenario {
    std::string name;
    AmbientSpace ambient;
    WarpedProduct wp;
    ImmersionMap imm;
    Box base_box, fiber_box, total_box;
    SamplingSpec sampling;
    Tolerances tol;

    /// Deterministic sample points of the total chart box.
    std::vector<Vec> sample_points() const;
};

/// Parse and validate a scenario from JSON. Performs expression parsing,
/// dimension checks, warp positivity sampling, a singularity sweep of every
/// declared expression, and an isometry spot-check at five points. Throws
/// ParseError / ValidationError with context on failure.
Scenario load_scenario(const nlohmann::json& j);
Scenario load_scenario_file(const std::string& path);

/// Builtin immersion families used by the golden scenarios. Builders return
/// complete scenarios; the JSON loader routes `"immersion": {"builtin": ...}`
/// here.
Scenario builtin_circle(double radius);
Scenario builtin_product_torus(double a, double b);
Scenario builtin_clifford_identity(int m1, int m2, bool embedded);
Scenario builtin_surface_of_revolution(const std::string& profile, double t_min,
                                       double t_max);
Scenario builtin_equator(double radius);
Scenario builtin_sphere_umbilic(double colatitude);

}  // namespace warpcurv
