#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "esor/bounds.hpp"
#include "esor/config.hpp"
#include "esor/observer.hpp"
#include "esor/plants.hpp"
#include "esor/safety.hpp"

namespace esor {

// Fixed-schema columnar log, one row per controller tick. Column layout:
//   t, x*, y*, xh*, per channel {fhat_c, ftrue_c, gamma_c}, u, slack,
//   infeasible, fallback, track_err, per barrier {h_<name>, eff_<name>,
//   psi_<name>}
// where h is the configured safety function on the true state, eff is the
// effective (degree-reduced) constraint function on the true state, and psi
// is the controller's claimed lower bound on eff's derivative at the applied
// input.
struct TrajectoryLog {
    std::vector<std::string> columns;
    std::vector<Vec> rows;

    int col(const std::string& name) const; // -1 when absent
    double at(std::size_t row, const std::string& name) const;
};

struct Metrics {
    double min_h = 0.0;
    double mean_h = 0.0;
    long violations = 0; // rows with any barrier below zero
    double rmse_track = 0.0;
    double max_abs_u = 0.0;
    double containment_rate = 1.0; // post-transient, all channels inside gamma
    double sufficiency_rate = 1.0; // post-transient, fd derivative >= psi - tol
    double mean_gap = 0.0;         // post-transient mean of (fd derivative - psi)
    long infeasible_samples = 0;
    long fallback_samples = 0;
    long rows = 0;
};

struct VerifyReport {
    double containment_rate = 1.0;
    double sufficiency_rate = 1.0;
    double max_normalized_exceedance = -1.0; // max (|f-fhat|-gamma)/gamma
    std::vector<long> flagged;               // rows failing either check
};

// A fully wired scenario: plant, constraint functions in degree-1 form,
// observer gains, error bounds, and the baseline observer plumbing.
struct Scenario {
    ScenarioConfig cfg;
    Plant plant;
    std::vector<BarrierSpec> raw_barriers; // as configured (logging)
    std::vector<BarrierSpec> barriers;     // degree-1 constraint form
    std::optional<LyapunovSpec> clf;
    ErrorBoundSet bounds;
    std::vector<EsoGains> gains;
    std::array<double, 2> u_box{};
    long steps_per_tick = 10;
    std::function<double(const Vec&)> track_err;

    // DOB baseline: one observer on the barrier's derivative channel with a
    // worst-case margin, plus (cruise only) one on the tracking function.
    double dob_margin = 0.0;
    std::function<double(const Vec&)> dob_sigma;
    std::function<Affine(const Vec&, double)> dob_ae; // affine in u
    bool dob_has_clf = false;
    std::function<double(const Vec&)> dobV_sigma;
    std::function<Affine(const Vec&, double)> dobV_ae;
};

Scenario build_scenario(const ScenarioConfig& cfg);

// Fixed-step loop: measurements refresh at every dt_sim sub-step, the
// control is held between ticks, and the plant and all observers advance
// synchronously from the same sub-step snapshot. Deterministic.
TrajectoryLog run_scenario(const Scenario& sc);
TrajectoryLog run_scenario(const ScenarioConfig& cfg);

// Estimate vector: measured components first, then each channel's chain
// estimates overlaid on its slots.
Vec assemble_estimate(const Plant& plant, const Vec& y,
                      const std::vector<EsoState>& eso);

Metrics compute_metrics(const TrajectoryLog& log, double transient = 1.0);

VerifyReport verify_bounds(const TrajectoryLog& log, double transient = 1.0);

struct SweepResult {
    std::string axis;
    std::vector<std::string> values;
    std::vector<Metrics> metrics;
};

// One run per value, sequentially, template config otherwise unchanged.
// Supported axes: omega_o, dt_sim, dt_ctrl, k_b, horizon, controller.
SweepResult sweep(const ScenarioConfig& base, const std::string& axis,
                  const std::vector<std::string>& values);

void export_csv(const TrajectoryLog& log, const std::string& path);
void export_csv(const Metrics& m, const std::string& path);
void export_csv(const SweepResult& s, const std::string& path);
void export_csv(const ErrorBoundSet& b, const std::string& path);
TrajectoryLog from_csv(const std::string& path);

// 0 clean; 2 when any barrier went negative; 3 when QP infeasibility was
// hit (safety violations dominate).
int decide_exit_code(const Metrics& m);

} // namespace esor
