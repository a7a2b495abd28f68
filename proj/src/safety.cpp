#include "esor/safety.hpp"

#include <cmath>
#include <limits>

#include "esor/errors.hpp"
#include "esor/ode.hpp"

namespace esor {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double step) {
    Vec g(x.size());
    Vec xp = x, xm = x;
    for (std::size_t j = 0; j < x.size(); ++j) {
        double h = step * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        xm[j] = x[j] - h;
        g[j] = (f(xp) - f(xm)) / (2.0 * h);
        xp[j] = x[j];
        xm[j] = x[j];
    }
    return g;
}

Vec barrier_grad(const BarrierSpec& spec, const Vec& x) {
    return spec.grad ? spec.grad(x) : fd_gradient(spec.h, x);
}

Affine psi_h_affine(const Plant& plant, double t, const Vec& xhat, const Vec& fhat,
                    const ErrorBoundSet& bounds, const BarrierSpec& spec,
                    RobustMode mode) {
    if (spec.degree != 1)
        throw DomainError("lift degree-2 barriers before building the robust constraint");
    if (fhat.size() != plant.channels.size() ||
        bounds.channel.size() != plant.channels.size())
        throw DomainError("disturbance estimates/bounds do not match the plant channels");

    Vec g = barrier_grad(spec, xhat);
    check_finite(g, "barrier gradient");

    Affine out;
    out.c1 = dot(g, plant.input(xhat));
    out.c0 = dot(g, plant.drift(xhat, t));

    double lip = spec.lip_grad;
    double inflate = 0.0;
    if (mode == RobustMode::Strict) {
        if (lip < 0.0)
            throw MissingLipschitzError(
                "strict robust mode needs the barrier gradient's Lipschitz constant");
        double sq = 0.0;
        for (const ChannelBounds& cb : bounds.channel)
            for (double s : cb.state_bound) sq += s * s;
        inflate = lip * std::sqrt(sq);
    }

    for (std::size_t c = 0; c < plant.channels.size(); ++c) {
        const ChannelModel& ch = plant.channels[c];
        const ChannelBounds& cb = bounds.channel[c];
        int slot = ch.state_indices.back();
        out.c0 += g[static_cast<std::size_t>(slot)] * fhat[c];

        double restricted = 0.0;
        for (int idx : ch.state_indices) {
            double gi = g[static_cast<std::size_t>(idx)];
            restricted += gi * gi;
        }
        restricted = std::sqrt(restricted);
        double factor = mode == RobustMode::SteadyState ? 1.0 : cb.factor_strict;
        out.c0 -= (restricted + inflate) * factor * cb.gamma;
    }
    if (mode == RobustMode::Strict) out.c0 -= inflate * bounds.phi;
    return out;
}

double psi_h(const Plant& plant, double t, const Vec& xhat, const Vec& fhat, double u,
             const ErrorBoundSet& bounds, const BarrierSpec& spec, RobustMode mode) {
    return psi_h_affine(plant, t, xhat, fhat, bounds, spec, mode).at(u);
}

BarrierSpec hocbf_lift(const BarrierSpec& spec, const ChannelModel& channel) {
    if (spec.degree != 2) throw DomainError("only degree-2 barriers can be lifted");
    if (!(spec.alpha1 > 0.0 && spec.alpha2 > 0.0))
        throw DomainError("degree-2 barrier needs positive chain gains");
    if (channel.r != 2 || channel.state_indices.size() != 2)
        throw DomainError("barrier lift expects a length-2 chain channel");

    BarrierSpec base = spec;
    std::size_t pos = static_cast<std::size_t>(channel.state_indices[0]);
    std::size_t vel = static_cast<std::size_t>(channel.state_indices[1]);

    BarrierSpec lifted;
    lifted.name = spec.name;
    lifted.degree = 1;
    lifted.gamma_cbf = spec.alpha2;
    lifted.h = [base, pos, vel](const Vec& x) {
        Vec g = barrier_grad(base, x);
        return g[pos] * x[vel] + base.alpha1 * base.h(x);
    };
    return lifted;
}

namespace {

QpSolution solve_filter(double k_nom, const std::vector<Affine>& hard, const Affine* soft,
                        double p_slack, const std::array<double, 2>& u_box) {
    std::size_t n = soft ? 2 : 1;
    std::size_t m = hard.size() + (soft ? 1 : 0);
    QpProblem p;
    p.H = Mat(n, n);
    p.H(0, 0) = 2.0;
    p.q = Vec(n, 0.0);
    p.q[0] = -2.0 * k_nom;
    if (soft) p.H(1, 1) = 2.0 * p_slack;
    p.G = Mat(m, n);
    p.w = Vec(m);
    for (std::size_t i = 0; i < hard.size(); ++i) {
        p.G(i, 0) = hard[i].c1;
        p.w[i] = -hard[i].c0;
    }
    if (soft) {
        p.G(m - 1, 0) = soft->c1;
        p.G(m - 1, 1) = 1.0;
        p.w[m - 1] = -soft->c0;
    }
    p.lo = Vec(n, -kInf);
    p.hi = Vec(n, kInf);
    p.lo[0] = u_box[0];
    p.hi[0] = u_box[1];
    return solve_qp(p);
}

} // namespace

ControlResult safety_filter(double k_nom, const std::vector<Affine>& hard,
                            const Affine* soft, double p_slack,
                            const std::array<double, 2>& u_box) {
    check_finite(k_nom, "nominal control");
    ControlResult res;
    if (soft) {
        QpSolution s = solve_filter(k_nom, hard, soft, p_slack, u_box);
        if (s.status == QpStatus::Optimal) {
            res.u = s.x[0];
            res.slack = s.x[1];
            return res;
        }
    }
    QpSolution s = solve_filter(k_nom, hard, nullptr, 0.0, u_box);
    if (s.status == QpStatus::Optimal) {
        res.u = s.x[0];
        res.fallback = soft != nullptr;
        return res;
    }
    if (!(std::isfinite(u_box[0]) && std::isfinite(u_box[1])))
        throw DomainError("constraint rescue needs a finite input box");
    auto worst = [&](double u) {
        double m = kInf;
        for (const Affine& row : hard) m = std::min(m, row.at(u));
        return m;
    };
    res.u = worst(u_box[1]) > worst(u_box[0]) ? u_box[1] : u_box[0];
    res.fallback = true;
    res.infeasible = true;
    return res;
}

ControlResult esor_qp_control(const Plant& plant, double t, const Vec& xhat,
                              const Vec& fhat, double k_nom,
                              const std::vector<BarrierSpec>& barriers,
                              const LyapunovSpec* clf, const ErrorBoundSet& bounds,
                              RobustMode mode, const std::array<double, 2>& u_box) {
    std::vector<Affine> hard;
    hard.reserve(barriers.size());
    for (const BarrierSpec& b : barriers) {
        Affine row = psi_h_affine(plant, t, xhat, fhat, bounds, b, mode);
        row.c0 += b.gamma_cbf * b.h(xhat);
        hard.push_back(row);
    }

    Affine soft;
    double p_slack = 0.0;
    if (clf) {
        Vec gv = clf->grad ? clf->grad(xhat) : fd_gradient(clf->V, xhat);
        double lfV = dot(gv, plant.drift(xhat, t));
        for (std::size_t c = 0; c < plant.channels.size(); ++c) {
            int slot = plant.channels[c].state_indices.back();
            lfV += gv[static_cast<std::size_t>(slot)] * fhat[c];
        }
        double lgV = dot(gv, plant.input(xhat));
        // Vdot <= -lambda V + slack, written as a >=0 row in (u, slack)
        soft.c0 = -(lfV + clf->lambda * clf->V(xhat));
        soft.c1 = -lgV;
        p_slack = clf->p_slack;
    }
    return safety_filter(k_nom, hard, clf ? &soft : nullptr, p_slack, u_box);
}

ControlResult plain_qp_control(const Plant& plant, double t, const Vec& x, const Vec& d,
                               double k_nom, const std::vector<BarrierSpec>& barriers,
                               const LyapunovSpec* clf,
                               const std::array<double, 2>& u_box) {
    ErrorBoundSet zb = zero_bounds(plant.channels);
    return esor_qp_control(plant, t, x, d, k_nom, barriers, clf, zb,
                           RobustMode::SteadyState, u_box);
}

DobState dob_init(double k_b, double sigma0, double margin) {
    if (!(k_b > 0.0)) throw DomainError("disturbance observer gain must be positive");
    DobState s;
    s.k_b = k_b;
    s.margin = margin;
    s.z = -k_b * sigma0;
    s.b_hat = 0.0;
    return s;
}

DobState dob_update(const DobState& s, double sigma, double a_e, double dt) {
    DobState out = s;
    Vec z = rk4_step(
        [&](double, const Vec& zv) -> Vec {
            return {-s.k_b * (zv[0] + s.k_b * sigma) - s.k_b * a_e};
        },
        Vec{s.z}, 0.0, dt);
    out.z = z[0];
    out.b_hat = out.z + s.k_b * sigma;
    return out;
}

} // namespace esor
