#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "esor/errors.hpp"
#include "esor/harness.hpp"

#include "json.hpp"

using namespace esor;
using nlohmann::json;

namespace {

ScenarioConfig short_acc(double horizon = 0.2) {
    ScenarioConfig cfg = default_acc_config();
    cfg.horizon = horizon;
    return cfg;
}

} // namespace

TEST_CASE("cruise scenario wiring") {
    Scenario sc = build_scenario(default_acc_config());
    CHECK(sc.plant.channels.size() == 1);
    CHECK(sc.u_box[0] == -0.3);
    CHECK(sc.u_box[1] == 0.3);
    CHECK(sc.steps_per_tick == 10);
    REQUIRE(sc.raw_barriers.size() == 1);
    CHECK(sc.raw_barriers[0].name == "headway");
    CHECK(sc.raw_barriers[0].degree == 1);
    CHECK(sc.barriers[0].gamma_cbf == 1.0);
    CHECK(sc.clf.has_value());
    REQUIRE(sc.gains.size() == 1);
    CHECK(sc.gains[0].mode == EsoMode::Discrete);
    CHECK(sc.gains[0].T == default_acc_config().dt_sim);
    REQUIRE(sc.bounds.channel.size() == 1);
    CHECK(sc.bounds.channel[0].gamma > 0.0);
    CHECK(sc.bounds.phi > 0.0);
}

TEST_CASE("segway scenario wiring reduces the pitch barrier to degree one") {
    ScenarioConfig cfg = default_segway_config();
    Scenario sc = build_scenario(cfg);
    CHECK(sc.plant.channels.size() == 2);
    REQUIRE(sc.raw_barriers.size() == 1);
    CHECK(sc.raw_barriers[0].name == "upright");
    CHECK(sc.raw_barriers[0].degree == 2);
    REQUIRE(sc.barriers.size() == 1);
    CHECK(sc.barriers[0].degree == 1);
    CHECK(sc.barriers[0].gamma_cbf == cfg.alpha2);
    CHECK(!sc.clf.has_value());
    CHECK(sc.gains.size() == 2);
    CHECK(sc.bounds.channel.size() == 2);

    ScenarioConfig with_clf = cfg;
    with_clf.use_clf = true;
    CHECK_THROWS_AS(build_scenario(with_clf), ConfigError);
}

TEST_CASE("estimate assembly overlays chain slots over measurements") {
    Plant pl = make_acc_plant(AccParams{});
    std::vector<EsoState> eso(1);
    eso[0].z = {99.0, 5.0};
    Vec xhat = assemble_estimate(pl, {20.0, 100.0}, eso);
    REQUIRE(xhat.size() == 2);
    CHECK(xhat[0] == 99.0); // channel estimate wins on its own slot
    CHECK(xhat[1] == 100.0);

    Plant seg = make_segway_plant(SegwayParams{});
    std::vector<EsoState> se(2);
    se[0].z = {1.0, 2.0, 0.1};
    se[1].z = {3.0, 4.0, 0.2};
    Vec sh = assemble_estimate(seg, {-7.0, -8.0}, se);
    REQUIRE(sh.size() == 4);
    CHECK(sh[0] == 1.0);
    CHECK(sh[1] == 3.0);
    CHECK(sh[2] == 2.0);
    CHECK(sh[3] == 4.0);
}

TEST_CASE("runs are deterministic") {
    ScenarioConfig cfg = short_acc();
    TrajectoryLog a = run_scenario(cfg);
    TrajectoryLog b = run_scenario(cfg);
    REQUIRE(a.rows.size() == b.rows.size());
    REQUIRE(a.columns == b.columns);
    for (std::size_t r = 0; r < a.rows.size(); ++r)
        for (std::size_t c = 0; c < a.columns.size(); ++c)
            REQUIRE(a.rows[r][c] == b.rows[r][c]);
}

TEST_CASE("tick grid and initial row") {
    TrajectoryLog log = run_scenario(short_acc());
    REQUIRE(log.rows.size() == 201);
    CHECK(log.at(0, "t") == 0.0);
    CHECK(log.at(200, "t") == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(log.at(0, "x0") == 18.0);
    CHECK(log.at(0, "x1") == 100.0);
    CHECK(log.col("u") >= 0);
    CHECK(log.col("h_headway") >= 0);
    CHECK(log.col("eff_headway") >= 0);
    CHECK(log.col("psi_headway") >= 0);
    CHECK(log.col("fhat0") >= 0);
    CHECK(log.col("gamma0") >= 0);
    CHECK(log.col("no_such_column") == -1);
    CHECK_THROWS_AS(log.at(0, "no_such_column"), Error);
}

TEST_CASE("trajectory csv roundtrip is exact") {
    TrajectoryLog log = run_scenario(short_acc(0.05));
    const std::string path = "harness_roundtrip.csv";
    export_csv(log, path);
    TrajectoryLog back = from_csv(path);
    std::remove(path.c_str());

    REQUIRE(back.columns == log.columns);
    REQUIRE(back.rows.size() == log.rows.size());
    for (std::size_t r = 0; r < log.rows.size(); ++r)
        for (std::size_t c = 0; c < log.columns.size(); ++c)
            REQUIRE(back.rows[r][c] == log.rows[r][c]);
}

TEST_CASE("metrics on a short cruise run") {
    TrajectoryLog log = run_scenario(short_acc());
    Metrics m = compute_metrics(log);
    CHECK(m.rows == 201);
    CHECK(m.violations == 0);
    CHECK(m.min_h > 0.0);
    CHECK(m.mean_h >= m.min_h);
    CHECK(m.max_abs_u <= 0.3 + 1e-15);
    CHECK(m.infeasible_samples == 0);
    // the default transient window exceeds this horizon: rates stay vacuous
    CHECK(m.containment_rate == 1.0);
    CHECK(m.sufficiency_rate == 1.0);
    CHECK(m.mean_gap == 0.0);
    CHECK(decide_exit_code(m) == 0);

    Metrics early = compute_metrics(log, 0.05);
    CHECK(early.containment_rate >= 0.0);
    CHECK(early.containment_rate <= 1.0);
    CHECK(early.sufficiency_rate >= 0.0);
    CHECK(early.sufficiency_rate <= 1.0);
    CHECK(std::isfinite(early.mean_gap));

    VerifyReport rep = verify_bounds(log);
    CHECK(rep.containment_rate == 1.0);
    CHECK(rep.flagged.empty());
}

TEST_CASE("exit codes rank safety violations over infeasibility") {
    Metrics m;
    CHECK(decide_exit_code(m) == 0);
    m.infeasible_samples = 2;
    CHECK(decide_exit_code(m) == 3);
    m.violations = 1;
    CHECK(decide_exit_code(m) == 2);
}

TEST_CASE("sweep over the control period") {
    SweepResult s = sweep(short_acc(), "dt_ctrl", {"0.001", "0.002"});
    CHECK(s.axis == "dt_ctrl");
    REQUIRE(s.metrics.size() == 2);
    CHECK(s.metrics[0].rows == 201);
    CHECK(s.metrics[1].rows == 101);
    CHECK_THROWS_AS(sweep(short_acc(), "mass", {"1.0"}), ConfigError);
    CHECK_THROWS_AS(sweep(short_acc(), "omega_o", {"fast"}), ConfigError);
}

TEST_CASE("every controller variant completes a short run") {
    for (const char* name : {"esor_qp", "true_d_qp", "nominal_qp", "dob_cbf_qp"}) {
        ScenarioConfig cfg = short_acc();
        cfg.controller = name;
        TrajectoryLog log = run_scenario(cfg);
        Metrics m = compute_metrics(log);
        CHECK(m.rows == 201);
        CHECK(m.violations == 0);
        CHECK(m.max_abs_u <= 0.3 + 1e-15);
    }
    ScenarioConfig seg = default_segway_config();
    seg.horizon = 0.2;
    Metrics m = compute_metrics(run_scenario(seg));
    CHECK(m.rows == 201);
    CHECK(m.violations == 0);
    CHECK(m.max_abs_u <= 25.0 + 1e-12);
}

TEST_CASE("config parsing applies defaults and rejects typos") {
    ScenarioConfig cfg = parse_config(json::object());
    CHECK(cfg.plant == "acc");
    CHECK(cfg.horizon == 30.0);
    CHECK(cfg.x0 == Vec{18.0, 100.0});
    CHECK(cfg.observer == EsoMode::Discrete);
    CHECK(cfg.use_clf);

    ScenarioConfig seg = parse_config(json::parse(R"({"plant": "segway"})"));
    CHECK(seg.horizon == 20.0);
    CHECK(seg.x0.size() == 4);
    CHECK(!seg.use_clf);

    ScenarioConfig noclf = parse_config(json::parse(R"({"clf": null})"));
    CHECK(!noclf.use_clf);

    ScenarioConfig tuned =
        parse_config(json::parse(R"({"clf": {"lambda": 2.5}, "barrier": {"gamma_cbf": 3.0}})"));
    CHECK(tuned.lambda_clf == 2.5);
    CHECK(tuned.p_slack == 100.0);
    CHECK(tuned.gamma_cbf == 3.0);

    CHECK_THROWS_AS(parse_config(json::parse(R"({"plnt": "acc"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"acc": {"mass": 1650}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"dt_sim": 3e-4})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"x0": [1, 2, 3]})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"observer": "sampled"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"controller": "mpc"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"bounds": {"x_box": [[0, 1]]}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"barrier": {"gamma_cbf": -1}})")),
                    ConfigError);
}

TEST_CASE("observer-based control matches the oracle when nothing is unknown") {
    ScenarioConfig base = short_acc(0.5);
    base.acc.d0 = DisturbanceSignal::zero();

    ScenarioConfig oracle = base;
    oracle.controller = "true_d_qp";
    TrajectoryLog a = run_scenario(base);
    TrajectoryLog b = run_scenario(oracle);
    REQUIRE(a.rows.size() == b.rows.size());
    const int uc = a.col("u");
    REQUIRE(uc >= 0);
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows.size(); ++r)
        worst = std::max(worst, std::abs(a.rows[r][static_cast<std::size_t>(uc)] -
                                         b.rows[r][static_cast<std::size_t>(uc)]));
    CHECK(worst <= 1e-6);
}
