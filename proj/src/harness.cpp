#include "esor/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "esor/errors.hpp"
#include "esor/ode.hpp"

namespace esor {

int TrajectoryLog::col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

double TrajectoryLog::at(std::size_t row, const std::string& name) const {
    int c = col(name);
    if (c < 0) throw Error("log column '" + name + "' not found");
    return rows[row][static_cast<std::size_t>(c)];
}

namespace {

enum class Ctl { Esor, TrueD, Nominal, Dob };

Ctl controller_kind(const std::string& name) {
    if (name == "esor_qp") return Ctl::Esor;
    if (name == "true_d_qp") return Ctl::TrueD;
    if (name == "nominal_qp") return Ctl::Nominal;
    if (name == "dob_cbf_qp") return Ctl::Dob;
    throw ConfigError("unknown controller '" + name + "'");
}

BarrierSpec acc_barrier(const ScenarioConfig& cfg) {
    const double tau = cfg.acc.tau_d;
    BarrierSpec b;
    b.name = "headway";
    b.h = [tau](const Vec& x) { return x[1] - tau * x[0]; };
    b.grad = [tau](const Vec&) { return Vec{-tau, 1.0}; };
    b.degree = 1;
    b.gamma_cbf = cfg.gamma_cbf;
    b.lip_grad = 0.0; // the gradient is constant
    return b;
}

BarrierSpec segway_barrier(const ScenarioConfig& cfg) {
    BarrierSpec b;
    b.name = "upright";
    b.h = [](const Vec& x) { return M_PI / 10.0 - x[1] * x[1]; };
    b.grad = [](const Vec& x) { return Vec{0.0, -2.0 * x[1], 0.0, 0.0}; };
    b.degree = 2;
    b.alpha1 = cfg.alpha1;
    b.alpha2 = cfg.alpha2;
    return b;
}

std::vector<std::string> build_columns(const Scenario& sc) {
    std::vector<std::string> cols;
    cols.push_back("t");
    for (int i = 0; i < sc.plant.n; ++i) cols.push_back("x" + std::to_string(i));
    for (int i = 0; i < sc.plant.n_y; ++i) cols.push_back("y" + std::to_string(i));
    for (int i = 0; i < sc.plant.n; ++i) cols.push_back("xh" + std::to_string(i));
    for (std::size_t c = 0; c < sc.plant.channels.size(); ++c) {
        cols.push_back("fhat" + std::to_string(c));
        cols.push_back("ftrue" + std::to_string(c));
        cols.push_back("gamma" + std::to_string(c));
    }
    cols.push_back("u");
    cols.push_back("slack");
    cols.push_back("infeasible");
    cols.push_back("fallback");
    cols.push_back("track_err");
    for (const BarrierSpec& b : sc.raw_barriers) {
        cols.push_back("h_" + b.name);
        cols.push_back("eff_" + b.name);
        cols.push_back("psi_" + b.name);
    }
    return cols;
}

} // namespace

Scenario build_scenario(const ScenarioConfig& cfg) {
    validate_config(cfg);
    Scenario sc;
    sc.cfg = cfg;
    sc.u_box = input_box(cfg);
    sc.steps_per_tick = std::lround(cfg.dt_ctrl / cfg.dt_sim);

    std::function<Vec(const Vec&, double)> phi_dyn;
    if (cfg.plant == "acc") {
        sc.plant = make_acc_plant(cfg.acc);
        BarrierSpec raw = acc_barrier(cfg);
        sc.raw_barriers = {raw};
        sc.barriers = {raw};
        if (cfg.use_clf) {
            LyapunovSpec v;
            const double vd = cfg.acc.v_d;
            v.V = [vd](const Vec& x) {
                double e = x[0] - vd;
                return e * e;
            };
            v.grad = [vd](const Vec& x) { return Vec{2.0 * (x[0] - vd), 0.0}; };
            v.lambda = cfg.lambda_clf;
            v.p_slack = cfg.p_slack;
            sc.clf = v;
        }
        const AccParams p = cfg.acc;
        // Known lead-speed feedthrough enters the worst-case state speed; in
        // the unknown configuration it is covered by the channel envelope.
        const double bvl = p.v_l_known ? p.v_l.mag_bound() : 0.0;
        phi_dyn = [p, bvl](const Vec& x, double u) -> Vec {
            return {-acc_drag(p, x[0]) / p.m + p.grav * u, std::abs(x[0]) + bvl};
        };
        sc.track_err = [vd = p.v_d](const Vec& x) { return x[0] - vd; };
    } else {
        sc.plant = make_segway_plant(cfg.segway);
        if (cfg.use_clf)
            throw ConfigError("no tracking function is defined for the segway scenario");
        BarrierSpec raw = segway_barrier(cfg);
        sc.raw_barriers = {raw};
        sc.barriers = {hocbf_lift(raw, sc.plant.channels[1])};
        phi_dyn = [plant = sc.plant](const Vec& x, double u) {
            return axpy(plant.drift(x, 0.0), u, plant.input(x));
        };
        sc.track_err = [pd = cfg.segway.p_d](const Vec& x) { return x[0] - pd; };
    }

    sc.bounds = assemble_error_bounds(sc.plant.channels, cfg.omega_o, cfg.dt_sim,
                                      sc.plant.dist_bounds, phi_dyn, cfg.x_box, sc.u_box,
                                      cfg.grid_n);

    for (const ChannelModel& ch : sc.plant.channels) {
        if (cfg.observer == EsoMode::Continuous)
            sc.gains.push_back(continuous_gains(ch.r, cfg.omega_o));
        else
            sc.gains.push_back(
                discrete_gains(ch.r, omega_to_discrete(cfg.omega_o, cfg.dt_sim), cfg.dt_sim));
    }

    if (controller_kind(cfg.controller) == Ctl::Dob) {
        if (sc.raw_barriers.size() != 1)
            throw ConfigError("the DOB baseline expects exactly one barrier");
        if (cfg.plant == "acc") {
            const AccParams p = cfg.acc;
            if (!p.v_l_known)
                throw ConfigError("the DOB baseline on the cruise plant needs v_l_known");
            // b_e = -tau_d * d0, so sup|db_e/dt| = tau_d * sup|d0'|.
            sc.dob_margin = p.tau_d * p.d0.rate_bound() / cfg.k_b;
            sc.dob_sigma = [p](const Vec& x) { return x[1] - p.tau_d * x[0]; };
            sc.dob_ae = [p](const Vec& x, double t) {
                Affine a;
                a.c0 = (p.v_l.value(t) - x[0]) + p.tau_d * acc_drag(p, x[0]) / p.m;
                a.c1 = -p.tau_d * p.grav;
                return a;
            };
            if (cfg.use_clf) {
                sc.dob_has_clf = true;
                sc.dobV_sigma = [p](const Vec& x) {
                    double e = x[0] - p.v_d;
                    return e * e;
                };
                sc.dobV_ae = [p](const Vec& x, double) {
                    Affine a;
                    double e2 = 2.0 * (x[0] - p.v_d);
                    a.c0 = e2 * (-acc_drag(p, x[0]) / p.m);
                    a.c1 = e2 * p.grav;
                    return a;
                };
            }
        } else {
            const SegwayParams p = cfg.segway;
            const double w_max = std::max(std::abs(cfg.x_box[3][0]), std::abs(cfg.x_box[3][1]));
            const double phi_max = std::max(std::abs(cfg.x_box[1][0]), std::abs(cfg.x_box[1][1]));
            // b_e = -2 phi d2 on the sigma = hdot channel, so
            // |db_e/dt| <= 2(|omega| |d2| + |phi| |d2'|) over the operating box.
            const double b_h = 2.0 * (w_max * p.d2.mag_bound() + phi_max * p.d2.rate_bound());
            sc.dob_margin = b_h / cfg.k_b;
            sc.dob_sigma = [](const Vec& x) { return -2.0 * x[1] * x[3]; };
            sc.dob_ae = [p](const Vec& x, double) {
                SegwayAffine a = segway_affine(x[1], x[2], x[3], p);
                Affine r;
                r.c0 = -2.0 * x[3] * x[3] - 2.0 * x[1] * a.f_w;
                r.c1 = -2.0 * x[1] * a.g_w;
                return r;
            };
        }
    }
    return sc;
}

Vec assemble_estimate(const Plant& plant, const Vec& y, const std::vector<EsoState>& eso) {
    Vec xh(static_cast<std::size_t>(plant.n), 0.0);
    for (std::size_t i = 0; i < plant.measured_states.size(); ++i)
        xh[static_cast<std::size_t>(plant.measured_states[i])] = y[i];
    for (std::size_t c = 0; c < plant.channels.size(); ++c) {
        const ChannelModel& ch = plant.channels[c];
        for (std::size_t j = 0; j < ch.state_indices.size(); ++j)
            xh[static_cast<std::size_t>(ch.state_indices[j])] = eso[c].z[j];
    }
    return xh;
}

TrajectoryLog run_scenario(const ScenarioConfig& cfg) { return run_scenario(build_scenario(cfg)); }

TrajectoryLog run_scenario(const Scenario& sc) {
    const ScenarioConfig& cfg = sc.cfg;
    const Plant& pl = sc.plant;
    const Ctl ctl = controller_kind(cfg.controller);
    const std::size_t C = pl.channels.size();
    const std::size_t B = sc.raw_barriers.size();
    const bool degree2 = sc.raw_barriers[0].degree == 2;
    const ErrorBoundSet zb = zero_bounds(pl.channels);

    TrajectoryLog log;
    log.columns = build_columns(sc);

    Vec x = cfg.x0;
    pl.check_domain(x);
    Vec y = measure(pl, x);

    std::vector<EsoState> eso;
    for (std::size_t c = 0; c < C; ++c) eso.push_back(eso_init(pl.channels[c], y, 0.0));

    DobState dob_h, dob_V;
    if (ctl == Ctl::Dob) {
        dob_h = dob_init(cfg.k_b, sc.dob_sigma(x), sc.dob_margin);
        if (sc.dob_has_clf) dob_V = dob_init(cfg.k_b, sc.dobV_sigma(x), 0.0);
    }

    const long n_ticks = static_cast<long>(std::floor(cfg.horizon / cfg.dt_ctrl + 1e-9));
    log.rows.reserve(static_cast<std::size_t>(n_ticks) + 1);

    for (long k = 0; k <= n_ticks; ++k) {
        const double t = static_cast<double>(k) * cfg.dt_ctrl;
        y = measure(pl, x);
        const Vec xhat = assemble_estimate(pl, y, eso);
        Vec fhat(C);
        for (std::size_t c = 0; c < C; ++c)
            fhat[c] = eso[c].z[static_cast<std::size_t>(pl.channels[c].r)];

        ControlResult res;
        Vec psi_log(B, 0.0);
        switch (ctl) {
        case Ctl::Esor: {
            const double k_nom = pl.nominal(xhat);
            res = esor_qp_control(pl, t, xhat, fhat, k_nom, sc.barriers,
                                  sc.clf ? &*sc.clf : nullptr, sc.bounds, cfg.robust_mode,
                                  sc.u_box);
            for (std::size_t b = 0; b < B; ++b)
                psi_log[b] = psi_h_affine(pl, t, xhat, fhat, sc.bounds, sc.barriers[b],
                                          cfg.robust_mode)
                                 .at(res.u);
            break;
        }
        case Ctl::TrueD:
        case Ctl::Nominal: {
            Vec fd(C, 0.0);
            if (ctl == Ctl::TrueD)
                for (std::size_t c = 0; c < C; ++c)
                    fd[c] = pl.true_disturbance(t, static_cast<int>(c));
            const double k_nom = pl.nominal(x);
            res = plain_qp_control(pl, t, x, fd, k_nom, sc.barriers,
                                   sc.clf ? &*sc.clf : nullptr, sc.u_box);
            for (std::size_t b = 0; b < B; ++b)
                psi_log[b] = psi_h_affine(pl, t, x, fd, zb, sc.barriers[b],
                                          RobustMode::SteadyState)
                                 .at(res.u);
            break;
        }
        case Ctl::Dob: {
            const double sig = sc.dob_sigma(x);
            const double bhat = dob_h.z + dob_h.k_b * sig;
            const Affine ae = sc.dob_ae(x, t);
            const double classK =
                degree2 ? cfg.alpha1 * sig + cfg.alpha2 * sc.barriers[0].h(x)
                        : sc.raw_barriers[0].gamma_cbf * sc.raw_barriers[0].h(x);
            std::vector<Affine> hard{{ae.c0 + bhat - sc.dob_margin + classK, ae.c1}};
            Affine soft;
            double ps = 0.0;
            if (sc.dob_has_clf) {
                const double sv = sc.dobV_sigma(x);
                const double bv = dob_V.z + dob_V.k_b * sv;
                const Affine av = sc.dobV_ae(x, t);
                soft.c0 = -(av.c0 + bv + cfg.lambda_clf * sv);
                soft.c1 = -av.c1;
                ps = cfg.p_slack;
            }
            res = safety_filter(pl.nominal(x), hard, sc.dob_has_clf ? &soft : nullptr, ps,
                                sc.u_box);
            psi_log[0] = ae.at(res.u) + bhat - sc.dob_margin + (degree2 ? cfg.alpha1 * sig : 0.0);
            break;
        }
        }

        Vec row;
        row.reserve(log.columns.size());
        row.push_back(t);
        for (double v : x) row.push_back(v);
        for (double v : y) row.push_back(v);
        for (double v : xhat) row.push_back(v);
        const Vec drift_x = pl.drift(x, t);
        const Vec gin = pl.input(x);
        for (std::size_t c = 0; c < C; ++c) {
            const ChannelModel& ch = pl.channels[c];
            const std::size_t slot = static_cast<std::size_t>(ch.state_indices.back());
            const double u_i = ch.control_index >= 0 ? res.u : 0.0;
            const double ftrue = drift_x[slot] + gin[slot] * res.u +
                                 pl.true_disturbance(t, static_cast<int>(c)) -
                                 (ch.b(xhat, y) + ch.a(xhat, y) * u_i);
            row.push_back(fhat[c]);
            row.push_back(ftrue);
            row.push_back(sc.bounds.channel[c].gamma);
        }
        row.push_back(res.u);
        row.push_back(res.slack);
        row.push_back(res.infeasible ? 1.0 : 0.0);
        row.push_back(res.fallback ? 1.0 : 0.0);
        row.push_back(sc.track_err(x));
        for (std::size_t b = 0; b < B; ++b) {
            row.push_back(sc.raw_barriers[b].h(x));
            row.push_back(sc.barriers[b].h(x));
            row.push_back(psi_log[b]);
        }
        log.rows.push_back(std::move(row));

        if (k == n_ticks) break;

        for (long s = 0; s < sc.steps_per_tick; ++s) {
            const double ts = static_cast<double>(k) * cfg.dt_ctrl +
                              static_cast<double>(s) * cfg.dt_sim;
            y = measure(pl, x);
            const Vec amb = assemble_estimate(pl, y, eso);
            const Vec xn = rk4_step(
                [&](double tt, const Vec& xx) { return true_field(pl, xx, res.u, tt); }, x, ts,
                cfg.dt_sim);
            std::vector<EsoState> en(C);
            for (std::size_t c = 0; c < C; ++c) {
                const ChannelModel& ch = pl.channels[c];
                const double u_i = ch.control_index >= 0 ? res.u : 0.0;
                en[c] = cfg.observer == EsoMode::Continuous
                            ? eso_step_continuous(eso[c], y, u_i, cfg.dt_sim, ch, sc.gains[c],
                                                  amb)
                            : eso_step_discrete(eso[c], y, u_i, ch, sc.gains[c], amb);
            }
            if (ctl == Ctl::Dob) {
                dob_h = dob_update(dob_h, sc.dob_sigma(x), sc.dob_ae(x, ts).at(res.u),
                                   cfg.dt_sim);
                if (sc.dob_has_clf)
                    dob_V = dob_update(dob_V, sc.dobV_sigma(x), sc.dobV_ae(x, ts).at(res.u),
                                       cfg.dt_sim);
            }
            x = xn;
            eso = std::move(en);
            pl.check_domain(x);
        }
    }
    return log;
}

namespace {

struct LogIndex {
    int t, u, infeasible, fallback, track_err;
    std::vector<int> fhat, ftrue, gamma;
    std::vector<int> h, eff, psi;
};

LogIndex index_log(const TrajectoryLog& log) {
    LogIndex ix;
    auto need = [&](const std::string& name) {
        int c = log.col(name);
        if (c < 0) throw Error("log column '" + name + "' not found");
        return c;
    };
    ix.t = need("t");
    ix.u = need("u");
    ix.infeasible = need("infeasible");
    ix.fallback = need("fallback");
    ix.track_err = need("track_err");
    for (int c = 0;; ++c) {
        if (log.col("fhat" + std::to_string(c)) < 0) break;
        ix.fhat.push_back(need("fhat" + std::to_string(c)));
        ix.ftrue.push_back(need("ftrue" + std::to_string(c)));
        ix.gamma.push_back(need("gamma" + std::to_string(c)));
    }
    for (std::size_t i = 0; i < log.columns.size(); ++i) {
        const std::string& nm = log.columns[i];
        if (nm.rfind("h_", 0) == 0) {
            const std::string suff = nm.substr(2);
            ix.h.push_back(static_cast<int>(i));
            ix.eff.push_back(need("eff_" + suff));
            ix.psi.push_back(need("psi_" + suff));
        }
    }
    if (ix.fhat.empty() || ix.h.empty()) throw Error("log is missing channel or barrier columns");
    return ix;
}

double cell(const TrajectoryLog& log, std::size_t r, int c) {
    return log.rows[r][static_cast<std::size_t>(c)];
}

} // namespace

Metrics compute_metrics(const TrajectoryLog& log, double transient) {
    Metrics m;
    m.rows = static_cast<long>(log.rows.size());
    if (log.rows.empty()) return m;
    const LogIndex ix = index_log(log);
    const std::size_t R = log.rows.size();

    m.min_h = std::numeric_limits<double>::infinity();
    double sum_h = 0.0, sum_te2 = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
        bool bad = false;
        for (int hc : ix.h) {
            const double h = cell(log, r, hc);
            m.min_h = std::min(m.min_h, h);
            if (h < 0.0) bad = true;
        }
        if (bad) ++m.violations;
        sum_h += cell(log, r, ix.h[0]);
        const double te = cell(log, r, ix.track_err);
        sum_te2 += te * te;
        m.max_abs_u = std::max(m.max_abs_u, std::abs(cell(log, r, ix.u)));
        if (cell(log, r, ix.infeasible) != 0.0) ++m.infeasible_samples;
        if (cell(log, r, ix.fallback) != 0.0) ++m.fallback_samples;
    }
    m.mean_h = sum_h / static_cast<double>(R);
    m.rmse_track = std::sqrt(sum_te2 / static_cast<double>(R));

    long cont_total = 0, cont_ok = 0;
    for (std::size_t r = 0; r < R; ++r) {
        if (cell(log, r, ix.t) < transient) continue;
        ++cont_total;
        bool inside = true;
        for (std::size_t c = 0; c < ix.fhat.size(); ++c) {
            const double err = std::abs(cell(log, r, ix.ftrue[c]) - cell(log, r, ix.fhat[c]));
            if (err > cell(log, r, ix.gamma[c])) inside = false;
        }
        if (inside) ++cont_ok;
    }
    m.containment_rate = cont_total == 0 ? 1.0 : static_cast<double>(cont_ok) /
                                                     static_cast<double>(cont_total);

    long suf_total = 0, suf_ok = 0;
    double gap_sum = 0.0;
    for (std::size_t r = 1; r + 1 < R; ++r) {
        if (cell(log, r, ix.t) < transient) continue;
        ++suf_total;
        bool ok = true;
        const double dt2 = cell(log, r + 1, ix.t) - cell(log, r - 1, ix.t);
        for (std::size_t b = 0; b < ix.h.size(); ++b) {
            const double hdot =
                (cell(log, r + 1, ix.eff[b]) - cell(log, r - 1, ix.eff[b])) / dt2;
            const double psi = cell(log, r, ix.psi[b]);
            if (!(hdot >= psi - 1e-3 * (std::abs(hdot) + 1.0))) ok = false;
            if (b == 0) gap_sum += hdot - psi;
        }
        if (ok) ++suf_ok;
    }
    m.sufficiency_rate =
        suf_total == 0 ? 1.0 : static_cast<double>(suf_ok) / static_cast<double>(suf_total);
    m.mean_gap = suf_total == 0 ? 0.0 : gap_sum / static_cast<double>(suf_total);
    return m;
}

VerifyReport verify_bounds(const TrajectoryLog& log, double transient) {
    VerifyReport rep;
    if (log.rows.empty()) return rep;
    const LogIndex ix = index_log(log);
    const std::size_t R = log.rows.size();

    long cont_total = 0, cont_ok = 0, suf_total = 0, suf_ok = 0;
    for (std::size_t r = 0; r < R; ++r) {
        if (cell(log, r, ix.t) < transient) continue;
        bool flag = false;

        ++cont_total;
        bool inside = true;
        for (std::size_t c = 0; c < ix.fhat.size(); ++c) {
            const double err = std::abs(cell(log, r, ix.ftrue[c]) - cell(log, r, ix.fhat[c]));
            const double g = cell(log, r, ix.gamma[c]);
            rep.max_normalized_exceedance =
                std::max(rep.max_normalized_exceedance, (err - g) / std::max(g, 1e-12));
            if (err > g) inside = false;
        }
        if (inside)
            ++cont_ok;
        else
            flag = true;

        if (r >= 1 && r + 1 < R) {
            ++suf_total;
            bool ok = true;
            const double dt2 = cell(log, r + 1, ix.t) - cell(log, r - 1, ix.t);
            for (std::size_t b = 0; b < ix.h.size(); ++b) {
                const double hdot =
                    (cell(log, r + 1, ix.eff[b]) - cell(log, r - 1, ix.eff[b])) / dt2;
                const double psi = cell(log, r, ix.psi[b]);
                if (!(hdot >= psi - 1e-3 * (std::abs(hdot) + 1.0))) ok = false;
            }
            if (ok)
                ++suf_ok;
            else
                flag = true;
        }
        if (flag) rep.flagged.push_back(static_cast<long>(r));
    }
    rep.containment_rate =
        cont_total == 0 ? 1.0 : static_cast<double>(cont_ok) / static_cast<double>(cont_total);
    rep.sufficiency_rate =
        suf_total == 0 ? 1.0 : static_cast<double>(suf_ok) / static_cast<double>(suf_total);
    return rep;
}

SweepResult sweep(const ScenarioConfig& base, const std::string& axis,
                  const std::vector<std::string>& values) {
    SweepResult out;
    out.axis = axis;
    for (const std::string& v : values) {
        ScenarioConfig cfg = base;
        if (axis == "controller") {
            cfg.controller = v;
        } else {
            double num = 0.0;
            try {
                num = std::stod(v);
            } catch (const std::exception&) {
                throw ConfigError("sweep value '" + v + "' is not a number");
            }
            if (axis == "omega_o")
                cfg.omega_o = num;
            else if (axis == "dt_sim")
                cfg.dt_sim = num;
            else if (axis == "dt_ctrl")
                cfg.dt_ctrl = num;
            else if (axis == "k_b")
                cfg.k_b = num;
            else if (axis == "horizon")
                cfg.horizon = num;
            else
                throw ConfigError("unsupported sweep axis '" + axis + "'");
        }
        validate_config(cfg);
        out.values.push_back(v);
        out.metrics.push_back(compute_metrics(run_scenario(cfg)));
    }
    return out;
}

namespace {

void write_double(std::ofstream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

const char* kMetricsHeader =
    "min_h,mean_h,violations,rmse_track,max_abs_u,containment_rate,"
    "sufficiency_rate,mean_gap,infeasible_samples,fallback_samples,rows";

void write_metrics_row(std::ofstream& out, const Metrics& m) {
    write_double(out, m.min_h);
    out << ',';
    write_double(out, m.mean_h);
    out << ',' << m.violations << ',';
    write_double(out, m.rmse_track);
    out << ',';
    write_double(out, m.max_abs_u);
    out << ',';
    write_double(out, m.containment_rate);
    out << ',';
    write_double(out, m.sufficiency_rate);
    out << ',';
    write_double(out, m.mean_gap);
    out << ',' << m.infeasible_samples << ',' << m.fallback_samples << ',' << m.rows;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

void export_csv(const TrajectoryLog& log, const std::string& path) {
    std::ofstream out = open_out(path);
    for (std::size_t i = 0; i < log.columns.size(); ++i) {
        if (i) out << ',';
        out << log.columns[i];
    }
    out << '\n';
    for (const Vec& row : log.rows) {
        if (row.size() != log.columns.size()) throw Error("log row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            write_double(out, row[i]);
        }
        out << '\n';
    }
    out.flush();
    if (!out) throw Error("write failure on '" + path + "'");
}

void export_csv(const Metrics& m, const std::string& path) {
    std::ofstream out = open_out(path);
    out << kMetricsHeader << '\n';
    write_metrics_row(out, m);
    out << '\n';
    out.flush();
    if (!out) throw Error("write failure on '" + path + "'");
}

void export_csv(const SweepResult& s, const std::string& path) {
    std::ofstream out = open_out(path);
    out << s.axis << ',' << kMetricsHeader << '\n';
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        out << s.values[i] << ',';
        write_metrics_row(out, s.metrics[i]);
        out << '\n';
    }
    out.flush();
    if (!out) throw Error("write failure on '" + path + "'");
}

void export_csv(const ErrorBoundSet& b, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "channel,r,omega_d,T,l_f,b_f,gamma,factor_strict,state_bound_max,deriv_bound_max,"
           "phi\n";
    for (std::size_t c = 0; c < b.channel.size(); ++c) {
        const ChannelBounds& cb = b.channel[c];
        out << c << ',' << cb.r << ',';
        write_double(out, cb.omega_d);
        out << ',';
        write_double(out, cb.T);
        out << ',';
        write_double(out, cb.l_f);
        out << ',';
        write_double(out, cb.b_f);
        out << ',';
        write_double(out, cb.gamma);
        out << ',';
        write_double(out, cb.factor_strict);
        out << ',';
        write_double(out, cb.state_bound.empty()
                              ? 0.0
                              : *std::max_element(cb.state_bound.begin(), cb.state_bound.end()));
        out << ',';
        write_double(out, cb.deriv_bound.empty()
                              ? 0.0
                              : *std::max_element(cb.deriv_bound.begin(), cb.deriv_bound.end()));
        out << ',';
        write_double(out, b.phi);
        out << '\n';
    }
    out.flush();
    if (!out) throw Error("write failure on '" + path + "'");
}

TrajectoryLog from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    TrajectoryLog log;
    std::string line;
    if (!std::getline(in, line)) throw Error("'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        log.columns.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        Vec row;
        row.reserve(log.columns.size());
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = line.find(',', pos);
            const std::string tok = line.substr(pos, comma - pos);
            try {
                row.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw Error("non-numeric cell '" + tok + "' in '" + path + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (row.size() != log.columns.size())
            throw Error("row width mismatch in '" + path + "'");
        log.rows.push_back(std::move(row));
    }
    return log;
}

int decide_exit_code(const Metrics& m) {
    if (m.violations > 0) return 2;
    if (m.infeasible_samples > 0) return 3;
    return 0;
}

} // namespace esor
