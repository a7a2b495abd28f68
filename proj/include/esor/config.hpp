#pragma once

#include <array>
#include <string>
#include <vector>

#include "esor/observer.hpp"
#include "esor/plants.hpp"
#include "esor/safety.hpp"

#include "json.hpp"

namespace esor {

// Everything a scenario run needs, with working defaults for both case
// studies. Loaded from JSON; unknown keys anywhere in the file are an error
// so that typos never silently fall back to defaults.
struct ScenarioConfig {
    std::string plant = "acc";        // "acc" | "segway"
    std::string controller = "esor_qp"; // esor_qp | true_d_qp | nominal_qp | dob_cbf_qp
    RobustMode robust_mode = RobustMode::SteadyState;
    EsoMode observer = EsoMode::Discrete;
    double horizon = 30.0;
    double dt_sim = 1e-4;  // plant/observer sub-step; also the bound sample time
    double dt_ctrl = 1e-3; // control update period (integer multiple of dt_sim)
    Vec x0;
    double omega_o = 20.0;
    double k_b = 10.0;     // DOB baseline gain
    unsigned seed = 0;     // randomized test batteries only; runs are deterministic
    std::string out_dir = ".";

    AccParams acc;
    SegwayParams segway;

    double gamma_cbf = 1.0;            // degree-1 class-K slope
    double alpha1 = 5.0, alpha2 = 5.0; // degree-2 chain gains
    bool use_clf = true;
    double lambda_clf = 5.0;
    double p_slack = 100.0;

    int grid_n = 5; // operating-box grid resolution for the speed bound
    std::vector<std::array<double, 2>> x_box;
};

ScenarioConfig default_acc_config();
ScenarioConfig default_segway_config();

// Parse + validate. Throws ConfigError with the offending key path.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);

void validate_config(const ScenarioConfig& cfg);

// Input box in the controller's units (fraction of m*g for the cruise plant,
// volts for the segway).
std::array<double, 2> input_box(const ScenarioConfig& cfg);

} // namespace esor
