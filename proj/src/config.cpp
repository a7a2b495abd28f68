#include "esor/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

#include "esor/errors.hpp"

namespace esor {

using nlohmann::json;

namespace {

void require_keys(const json& j, const char* where,
                  std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key()))
            throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
}

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw ConfigError(std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

DisturbanceSignal parse_signal(const json& j, const char* where) {
    require_keys(j, where, {"kind", "value", "amplitude", "period", "phase", "offset", "t", "v"});
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return DisturbanceSignal::zero();
    if (kind == "constant") return DisturbanceSignal::constant(j.at("value").get<double>());
    if (kind == "sinusoid")
        return DisturbanceSignal::sinusoid(j.at("amplitude").get<double>(),
                                           j.at("period").get<double>(),
                                           get_num(j, "phase", 0.0), get_num(j, "offset", 0.0));
    if (kind == "piecewise")
        return DisturbanceSignal::piecewise_linear(j.at("t").get<std::vector<double>>(),
                                                   j.at("v").get<std::vector<double>>());
    throw ConfigError(std::string("unknown signal kind '") + kind + "' in " + where);
}

void parse_acc(const json& j, AccParams& p) {
    require_keys(j, "acc", {"m", "f0", "f1", "f2", "v_d", "tau_d", "grav", "u_frac_limit",
                            "v_l_known", "d0", "v_l"});
    p.m = get_num(j, "m", p.m);
    p.f0 = get_num(j, "f0", p.f0);
    p.f1 = get_num(j, "f1", p.f1);
    p.f2 = get_num(j, "f2", p.f2);
    p.v_d = get_num(j, "v_d", p.v_d);
    p.tau_d = get_num(j, "tau_d", p.tau_d);
    p.grav = get_num(j, "grav", p.grav);
    p.u_frac_limit = get_num(j, "u_frac_limit", p.u_frac_limit);
    if (j.contains("v_l_known")) p.v_l_known = j.at("v_l_known").get<bool>();
    if (j.contains("d0")) p.d0 = parse_signal(j.at("d0"), "acc.d0");
    if (j.contains("v_l")) p.v_l = parse_signal(j.at("v_l"), "acc.v_l");
}

void parse_segway(const json& j, SegwayParams& p) {
    require_keys(j, "segway", {"m_w", "R", "J_w", "m_b", "l", "J_b", "K1", "K2", "grav",
                               "K_p", "K_v", "K_phi", "K_omega", "p_d", "u_limit", "d1", "d2"});
    p.m_w = get_num(j, "m_w", p.m_w);
    p.R = get_num(j, "R", p.R);
    p.J_w = get_num(j, "J_w", p.J_w);
    p.m_b = get_num(j, "m_b", p.m_b);
    p.l = get_num(j, "l", p.l);
    p.J_b = get_num(j, "J_b", p.J_b);
    p.K1 = get_num(j, "K1", p.K1);
    p.K2 = get_num(j, "K2", p.K2);
    p.grav = get_num(j, "grav", p.grav);
    p.K_p = get_num(j, "K_p", p.K_p);
    p.K_v = get_num(j, "K_v", p.K_v);
    p.K_phi = get_num(j, "K_phi", p.K_phi);
    p.K_omega = get_num(j, "K_omega", p.K_omega);
    p.p_d = get_num(j, "p_d", p.p_d);
    p.u_limit = get_num(j, "u_limit", p.u_limit);
    if (j.contains("d1")) p.d1 = parse_signal(j.at("d1"), "segway.d1");
    if (j.contains("d2")) p.d2 = parse_signal(j.at("d2"), "segway.d2");
}

} // namespace

ScenarioConfig default_acc_config() {
    ScenarioConfig cfg;
    cfg.plant = "acc";
    cfg.horizon = 30.0;
    cfg.x0 = {18.0, 100.0};
    cfg.use_clf = true;
    cfg.x_box = {{0.0, 30.0}, {0.0, 150.0}};
    return cfg;
}

ScenarioConfig default_segway_config() {
    ScenarioConfig cfg;
    cfg.plant = "segway";
    cfg.horizon = 20.0;
    cfg.x0 = {0.0, 0.0, 0.0, 0.0};
    cfg.use_clf = false;
    cfg.x_box = {{-16.0, 16.0}, {-0.57, 0.57}, {-8.0, 8.0}, {-3.0, 3.0}};
    return cfg;
}

ScenarioConfig parse_config(const json& j) {
    require_keys(j, "config",
                 {"plant", "controller", "robust_mode", "observer", "horizon", "dt_sim",
                  "dt_ctrl", "x0", "omega_o", "k_b", "seed", "out_dir", "acc", "segway",
                  "barrier", "clf", "bounds"});
    std::string plant = j.value("plant", std::string("acc"));
    ScenarioConfig cfg;
    if (plant == "acc")
        cfg = default_acc_config();
    else if (plant == "segway")
        cfg = default_segway_config();
    else
        throw ConfigError("unknown plant '" + plant + "'");

    cfg.controller = j.value("controller", cfg.controller);
    if (j.contains("robust_mode")) {
        std::string m = j.at("robust_mode").get<std::string>();
        if (m == "steady_state")
            cfg.robust_mode = RobustMode::SteadyState;
        else if (m == "strict")
            cfg.robust_mode = RobustMode::Strict;
        else
            throw ConfigError("robust_mode must be 'steady_state' or 'strict'");
    }
    if (j.contains("observer")) {
        std::string m = j.at("observer").get<std::string>();
        if (m == "continuous")
            cfg.observer = EsoMode::Continuous;
        else if (m == "discrete")
            cfg.observer = EsoMode::Discrete;
        else
            throw ConfigError("observer must be 'continuous' or 'discrete'");
    }
    cfg.horizon = get_num(j, "horizon", cfg.horizon);
    cfg.dt_sim = get_num(j, "dt_sim", cfg.dt_sim);
    cfg.dt_ctrl = get_num(j, "dt_ctrl", cfg.dt_ctrl);
    if (j.contains("x0")) cfg.x0 = j.at("x0").get<Vec>();
    cfg.omega_o = get_num(j, "omega_o", cfg.omega_o);
    cfg.k_b = get_num(j, "k_b", cfg.k_b);
    if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned>();
    cfg.out_dir = j.value("out_dir", cfg.out_dir);

    if (j.contains("acc")) parse_acc(j.at("acc"), cfg.acc);
    if (j.contains("segway")) parse_segway(j.at("segway"), cfg.segway);

    if (j.contains("barrier")) {
        const json& b = j.at("barrier");
        require_keys(b, "barrier", {"gamma_cbf", "alpha1", "alpha2"});
        cfg.gamma_cbf = get_num(b, "gamma_cbf", cfg.gamma_cbf);
        cfg.alpha1 = get_num(b, "alpha1", cfg.alpha1);
        cfg.alpha2 = get_num(b, "alpha2", cfg.alpha2);
    }
    if (j.contains("clf")) {
        const json& c = j.at("clf");
        if (c.is_null()) {
            cfg.use_clf = false;
        } else {
            require_keys(c, "clf", {"lambda", "p_slack"});
            cfg.use_clf = true;
            cfg.lambda_clf = get_num(c, "lambda", cfg.lambda_clf);
            cfg.p_slack = get_num(c, "p_slack", cfg.p_slack);
        }
    }
    if (j.contains("bounds")) {
        const json& b = j.at("bounds");
        require_keys(b, "bounds", {"grid_n", "x_box"});
        if (b.contains("grid_n")) cfg.grid_n = b.at("grid_n").get<int>();
        if (b.contains("x_box")) {
            cfg.x_box.clear();
            for (const auto& row : b.at("x_box")) {
                auto v = row.get<std::vector<double>>();
                if (v.size() != 2) throw ConfigError("x_box rows must be [lo, hi]");
                cfg.x_box.push_back({v[0], v[1]});
            }
        }
    }
    validate_config(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse failure: ") + e.what());
    }
    return parse_config(j);
}

void validate_config(const ScenarioConfig& cfg) {
    if (cfg.plant != "acc" && cfg.plant != "segway")
        throw ConfigError("unknown plant '" + cfg.plant + "'");
    if (cfg.controller != "esor_qp" && cfg.controller != "true_d_qp" &&
        cfg.controller != "nominal_qp" && cfg.controller != "dob_cbf_qp")
        throw ConfigError("unknown controller '" + cfg.controller + "'");
    if (!(cfg.horizon > 0.0)) throw ConfigError("horizon must be positive");
    if (!(cfg.dt_sim > 0.0)) throw ConfigError("dt_sim must be positive");
    if (!(cfg.dt_ctrl >= cfg.dt_sim)) throw ConfigError("dt_ctrl must be >= dt_sim");
    double ratio = cfg.dt_ctrl / cfg.dt_sim;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw ConfigError("dt_ctrl must be an integer multiple of dt_sim");
    std::size_t n = cfg.plant == "acc" ? 2 : 4;
    if (cfg.x0.size() != n) throw ConfigError("x0 has the wrong dimension for the plant");
    if (cfg.x_box.size() != n) throw ConfigError("x_box has the wrong dimension for the plant");
    for (const auto& b : cfg.x_box)
        if (!(b[0] < b[1])) throw ConfigError("x_box rows must satisfy lo < hi");
    if (!(cfg.omega_o > 0.0)) throw ConfigError("omega_o must be positive");
    if (!(cfg.k_b > 0.0)) throw ConfigError("k_b must be positive");
    if (!(cfg.gamma_cbf > 0.0)) throw ConfigError("gamma_cbf must be positive");
    if (!(cfg.alpha1 > 0.0 && cfg.alpha2 > 0.0))
        throw ConfigError("chain gains alpha1, alpha2 must be positive");
    if (cfg.use_clf && !(cfg.lambda_clf > 0.0 && cfg.p_slack > 0.0))
        throw ConfigError("clf decay rate and slack penalty must be positive");
    if (cfg.grid_n < 2) throw ConfigError("bounds grid_n must be at least 2");
    if (!(cfg.acc.m > 0.0 && cfg.acc.tau_d > 0.0 && cfg.acc.u_frac_limit > 0.0))
        throw ConfigError("acc parameters out of range");
    if (!(cfg.segway.m_w > 0.0 && cfg.segway.m_b > 0.0 && cfg.segway.l > 0.0 &&
          cfg.segway.R > 0.0 && cfg.segway.J_w > 0.0 && cfg.segway.J_b > 0.0 &&
          cfg.segway.u_limit > 0.0))
        throw ConfigError("segway parameters out of range");
}

std::array<double, 2> input_box(const ScenarioConfig& cfg) {
    if (cfg.plant == "acc") return {-cfg.acc.u_frac_limit, cfg.acc.u_frac_limit};
    return {-cfg.segway.u_limit, cfg.segway.u_limit};
}

} // namespace esor
