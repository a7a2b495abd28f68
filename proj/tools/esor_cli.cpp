#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "esor/errors.hpp"
#include "esor/harness.hpp"

using namespace esor;

namespace {

ScenarioConfig make_config(const std::string& path, const std::string& plant) {
    if (!path.empty()) return load_config(path);
    return plant == "segway" ? default_segway_config() : default_acc_config();
}

std::string join(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    std::filesystem::create_directories(dir);
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void print_metrics(const Metrics& m) {
    std::printf("rows            %ld\n", m.rows);
    std::printf("min_h           %.6g\n", m.min_h);
    std::printf("mean_h          %.6g\n", m.mean_h);
    std::printf("violations      %ld\n", m.violations);
    std::printf("rmse_track      %.6g\n", m.rmse_track);
    std::printf("max_abs_u       %.6g\n", m.max_abs_u);
    std::printf("containment     %.6g\n", m.containment_rate);
    std::printf("sufficiency     %.6g\n", m.sufficiency_rate);
    std::printf("mean_gap        %.6g\n", m.mean_gap);
    std::printf("infeasible      %ld\n", m.infeasible_samples);
    std::printf("fallback        %ld\n", m.fallback_samples);
}

void print_bounds(const ErrorBoundSet& b) {
    std::printf("channel  r  omega_d      T        l_f      gamma    factor\n");
    for (std::size_t c = 0; c < b.channel.size(); ++c) {
        const ChannelBounds& cb = b.channel[c];
        std::printf("%7zu  %d  %-9.6g %-8.3g %-8.5g %-8.5g %-8.5g\n", c, cb.r, cb.omega_d,
                    cb.T, cb.l_f, cb.gamma, cb.factor_strict);
    }
    std::printf("state speed bound phi = %.6g\n", b.phi);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Observer-based safety-filter simulation harness"};
    app.require_subcommand(1);

    std::string config_path, plant = "acc", out_dir, controller, axis, log_path;
    std::vector<std::string> values;
    double horizon = -1.0, transient = 1.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON scenario config");
        cmd->add_option("--plant", plant, "default scenario when no config is given")
            ->check(CLI::IsMember({"acc", "segway"}));
        cmd->add_option("--out", out_dir, "output directory for CSV files");
        cmd->add_option("--controller", controller,
                        "override the configured controller");
        cmd->add_option("--horizon", horizon, "override the configured horizon [s]");
    };

    CLI::App* run = app.add_subcommand("run", "simulate one scenario and export CSVs");
    add_common(run);

    CLI::App* sw = app.add_subcommand("sweep", "rerun a scenario over one axis");
    add_common(sw);
    sw->add_option("--axis", axis, "omega_o | dt_sim | dt_ctrl | k_b | horizon | controller")
        ->required();
    sw->add_option("--values", values, "comma-separated axis values")
        ->required()
        ->delimiter(',');

    CLI::App* bd = app.add_subcommand("bounds", "print and export the error bounds");
    add_common(bd);

    CLI::App* vf = app.add_subcommand("verify", "check a trajectory CSV against its logged bounds");
    vf->add_option("--log", log_path, "trajectory CSV produced by 'run'")->required();
    vf->add_option("--transient", transient, "seconds to skip before checking");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (vf->parsed()) {
            const TrajectoryLog log = from_csv(log_path);
            const VerifyReport rep = verify_bounds(log, transient);
            std::printf("containment     %.6g\n", rep.containment_rate);
            std::printf("sufficiency     %.6g\n", rep.sufficiency_rate);
            std::printf("max_exceedance  %.6g\n", rep.max_normalized_exceedance);
            std::printf("flagged rows    %zu\n", rep.flagged.size());
            const bool ok = rep.containment_rate >= 0.999 && rep.sufficiency_rate >= 0.999;
            std::printf("%s\n", ok ? "bounds hold" : "bounds violated");
            return ok ? 0 : 2;
        }

        ScenarioConfig cfg = make_config(config_path, plant);
        if (!controller.empty()) cfg.controller = controller;
        if (horizon > 0.0) cfg.horizon = horizon;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        validate_config(cfg);

        if (run->parsed()) {
            const auto t0 = std::chrono::steady_clock::now();
            const Scenario sc = build_scenario(cfg);
            const TrajectoryLog log = run_scenario(sc);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            const Metrics m = compute_metrics(log);
            export_csv(log, join(cfg.out_dir, "trajectory.csv"));
            export_csv(m, join(cfg.out_dir, "metrics.csv"));
            export_csv(sc.bounds, join(cfg.out_dir, "bounds.csv"));
            std::printf("%s / %s: %ld ticks in %.3f s\n", cfg.plant.c_str(),
                        cfg.controller.c_str(), m.rows, secs);
            print_metrics(m);
            return decide_exit_code(m);
        }
        if (sw->parsed()) {
            const SweepResult res = sweep(cfg, axis, values);
            export_csv(res, join(cfg.out_dir, "sweep.csv"));
            for (std::size_t i = 0; i < res.values.size(); ++i) {
                const Metrics& m = res.metrics[i];
                std::printf("%s=%s  min_h %.6g  violations %ld  containment %.6g  "
                            "mean_gap %.6g\n",
                            res.axis.c_str(), res.values[i].c_str(), m.min_h,
                            m.violations, m.containment_rate, m.mean_gap);
            }
            return 0;
        }
        // bounds
        const Scenario sc = build_scenario(cfg);
        export_csv(sc.bounds, join(cfg.out_dir, "bounds.csv"));
        print_bounds(sc.bounds);
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
}
