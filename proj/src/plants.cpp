#include "esor/plants.hpp"

#include <algorithm>
#include <cmath>

#include "esor/errors.hpp"

namespace esor {

double DisturbanceSignal::value(double t) const {
    switch (kind) {
    case Kind::Zero:
        return 0.0;
    case Kind::Constant:
        return offset;
    case Kind::Sinusoid:
        return amplitude * std::sin(2.0 * M_PI * t / period + phase) + offset;
    case Kind::PiecewiseLinear: {
        if (t <= knot_t.front()) return knot_v.front();
        if (t >= knot_t.back()) return knot_v.back();
        auto it = std::upper_bound(knot_t.begin(), knot_t.end(), t);
        std::size_t i = static_cast<std::size_t>(it - knot_t.begin());
        double s = (t - knot_t[i - 1]) / (knot_t[i] - knot_t[i - 1]);
        return knot_v[i - 1] + s * (knot_v[i] - knot_v[i - 1]);
    }
    }
    return 0.0;
}

double DisturbanceSignal::rate_bound() const {
    switch (kind) {
    case Kind::Zero:
    case Kind::Constant:
        return 0.0;
    case Kind::Sinusoid:
        return std::abs(amplitude) * 2.0 * M_PI / period;
    case Kind::PiecewiseLinear: {
        double r = 0.0;
        for (std::size_t i = 1; i < knot_t.size(); ++i)
            r = std::max(r, std::abs((knot_v[i] - knot_v[i - 1]) / (knot_t[i] - knot_t[i - 1])));
        return r;
    }
    }
    return 0.0;
}

double DisturbanceSignal::mag_bound() const {
    switch (kind) {
    case Kind::Zero:
        return 0.0;
    case Kind::Constant:
        return std::abs(offset);
    case Kind::Sinusoid:
        return std::abs(amplitude) + std::abs(offset);
    case Kind::PiecewiseLinear: {
        double m = 0.0;
        for (double v : knot_v) m = std::max(m, std::abs(v));
        return m;
    }
    }
    return 0.0;
}

DisturbanceSignal DisturbanceSignal::zero() { return {}; }

DisturbanceSignal DisturbanceSignal::constant(double c) {
    DisturbanceSignal d;
    d.kind = Kind::Constant;
    d.offset = c;
    return d;
}

DisturbanceSignal DisturbanceSignal::sinusoid(double amplitude, double period, double phase,
                                              double offset) {
    if (!(period > 0.0)) throw DomainError("sinusoid period must be positive");
    DisturbanceSignal d;
    d.kind = Kind::Sinusoid;
    d.amplitude = amplitude;
    d.period = period;
    d.phase = phase;
    d.offset = offset;
    return d;
}

DisturbanceSignal DisturbanceSignal::piecewise_linear(std::vector<double> t,
                                                      std::vector<double> v) {
    if (t.empty() || t.size() != v.size())
        throw DomainError("piecewise signal needs matching, non-empty knot lists");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw DomainError("piecewise signal knots must be strictly increasing in time");
    DisturbanceSignal d;
    d.kind = Kind::PiecewiseLinear;
    d.knot_t = std::move(t);
    d.knot_v = std::move(v);
    return d;
}

Vec measure(const Plant& p, const Vec& x) {
    Vec y(p.measured_states.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = x[static_cast<std::size_t>(p.measured_states[i])];
    return y;
}

Vec true_field(const Plant& p, const Vec& x, double u, double t) {
    Vec dx = axpy(p.drift(x, t), u, p.input(x));
    for (std::size_t c = 0; c < p.channels.size(); ++c) {
        const ChannelModel& ch = p.channels[c];
        int slot = ch.state_indices.back(); // disturbance enters the last chain state
        dx[static_cast<std::size_t>(slot)] += p.true_disturbance(t, static_cast<int>(c));
    }
    return dx;
}

// ---------------------------------------------------------------- cruise ---

double acc_drag(const AccParams& p, double v) { return p.f0 + p.f1 * v + p.f2 * v * v; }

Vec acc_dynamics(const Vec& x, double u_newton, double t, const AccParams& p) {
    check_finite(x, "cruise state");
    double v_f = x[0];
    return {(-acc_drag(p, v_f) + u_newton) / p.m + p.d0.value(t), p.v_l.value(t) - v_f};
}

Plant make_acc_plant(const AccParams& p) {
    Plant pl;
    pl.n = 2;
    pl.n_y = 2;
    pl.measured_states = {0, 1};

    pl.drift = [p](const Vec& x, double t) -> Vec {
        double lead = p.v_l_known ? p.v_l.value(t) : 0.0;
        return {-acc_drag(p, x[0]) / p.m, lead - x[0]};
    };
    pl.input = [p](const Vec&) -> Vec { return {p.grav, 0.0}; };
    pl.check_domain = [](const Vec& x) { check_finite(x, "cruise state"); };
    pl.nominal = [p](const Vec& xhat) { return acc_drag(p, xhat[0]) / (p.m * p.grav); };

    ChannelModel speed;
    speed.r = 1;
    speed.state_indices = {0};
    speed.output_index = 0;
    speed.control_index = 0;
    speed.a = [p](const Vec&, const Vec&) { return p.grav; };
    speed.b = [p](const Vec&, const Vec& y) { return -acc_drag(p, y[0]) / p.m; };
    pl.channels.push_back(speed);
    pl.dist_bounds.push_back({p.d0.rate_bound(), p.d0.mag_bound()});

    if (!p.v_l_known) {
        ChannelModel gap;
        gap.r = 1;
        gap.state_indices = {1};
        gap.output_index = 1;
        gap.control_index = -1;
        gap.a = [](const Vec&, const Vec&) { return 0.0; };
        gap.b = [](const Vec&, const Vec& y) { return -y[0]; };
        pl.channels.push_back(gap);
        pl.dist_bounds.push_back({p.v_l.rate_bound(), p.v_l.mag_bound()});
    }

    pl.true_disturbance = [p](double t, int c) {
        return c == 0 ? p.d0.value(t) : p.v_l.value(t);
    };
    return pl;
}

// ---------------------------------------------------------------- segway ---

SegwayAffine segway_affine(double phi, double v, double w, const SegwayParams& p) {
    double c = std::cos(phi), s = std::sin(phi);
    double m11 = p.m_w + p.m_b + p.J_w / (p.R * p.R);
    double m12 = p.m_b * p.l * c;
    double m22 = p.J_b + p.m_b * p.l * p.l;
    double det = m11 * m22 - m12 * m12;
    double wrel = v / p.R - w; // wheel spin rate relative to the body
    double r1 = -p.K2 * wrel / p.R + p.m_b * p.l * w * w * s;
    double r2 = p.K2 * wrel + p.m_b * p.grav * p.l * s;
    SegwayAffine a;
    a.f_v = (m22 * r1 - m12 * r2) / det;
    a.f_w = (-m12 * r1 + m11 * r2) / det;
    a.g_v = (m22 * p.K1 / p.R + m12 * p.K1) / det;
    a.g_w = -(m12 * p.K1 / p.R + m11 * p.K1) / det;
    return a;
}

Vec segway_dynamics(const Vec& x, double u, double t, const SegwayParams& p) {
    check_finite(x, "segway state");
    if (std::abs(x[1]) >= M_PI / 2.0)
        throw DomainError("segway body has pitched past the model's validity range");
    SegwayAffine a = segway_affine(x[1], x[2], x[3], p);
    return {x[2], x[3], a.f_v + a.g_v * u + p.d1.value(t), a.f_w + a.g_w * u + p.d2.value(t)};
}

double segway_nominal(const Vec& x, const SegwayParams& p) {
    return p.K_p * (x[0] - p.p_d) + p.K_v * x[2] + p.K_phi * x[1] + p.K_omega * x[3];
}

namespace {

void require_controllable_upright(const Plant& pl) {
    const double h = 1e-6;
    std::size_t n = 4;
    auto field = [&](const Vec& x) {
        Vec dx = pl.drift(x, 0.0);
        return dx; // u = 0: input column handled separately
    };
    Mat A(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec xp(n, 0.0), xm(n, 0.0);
        xp[j] = h;
        xm[j] = -h;
        Vec fp = field(xp), fm = field(xm);
        for (std::size_t i = 0; i < n; ++i) A(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
    Vec b = pl.input(Vec(n, 0.0));
    Mat ctrb(n, n);
    Vec col = b;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) ctrb(i, k) = col[i];
        col = A * col;
    }
    if (matrix_rank(ctrb) != n)
        throw DomainError("segway parameters give an uncontrollable upright linearization");
}

} // namespace

Plant make_segway_plant(const SegwayParams& p) {
    Plant pl;
    pl.n = 4;
    pl.n_y = 2;
    pl.measured_states = {0, 1};

    pl.drift = [p](const Vec& x, double) -> Vec {
        SegwayAffine a = segway_affine(x[1], x[2], x[3], p);
        return {x[2], x[3], a.f_v, a.f_w};
    };
    pl.input = [p](const Vec& x) -> Vec {
        SegwayAffine a = segway_affine(x[1], x[2], x[3], p);
        return {0.0, 0.0, a.g_v, a.g_w};
    };
    pl.check_domain = [](const Vec& x) {
        check_finite(x, "segway state");
        if (std::abs(x[1]) >= M_PI / 2.0)
            throw DomainError("segway body has pitched past the model's validity range");
    };
    pl.nominal = [p](const Vec& xhat) { return segway_nominal(xhat, p); };

    // Velocity estimates come from the running state estimate; the pitch
    // angle is measured directly, so the evaluators read it from y.
    ChannelModel wheel;
    wheel.r = 2;
    wheel.state_indices = {0, 2};
    wheel.output_index = 0;
    wheel.control_index = 0;
    wheel.a = [p](const Vec& ctx, const Vec& y) {
        return segway_affine(y[1], ctx[2], ctx[3], p).g_v;
    };
    wheel.b = [p](const Vec& ctx, const Vec& y) {
        return segway_affine(y[1], ctx[2], ctx[3], p).f_v;
    };
    pl.channels.push_back(wheel);
    pl.dist_bounds.push_back({p.d1.rate_bound(), p.d1.mag_bound()});

    ChannelModel pitch;
    pitch.r = 2;
    pitch.state_indices = {1, 3};
    pitch.output_index = 1;
    pitch.control_index = 0;
    pitch.a = [p](const Vec& ctx, const Vec& y) {
        return segway_affine(y[1], ctx[2], ctx[3], p).g_w;
    };
    pitch.b = [p](const Vec& ctx, const Vec& y) {
        return segway_affine(y[1], ctx[2], ctx[3], p).f_w;
    };
    pl.channels.push_back(pitch);
    pl.dist_bounds.push_back({p.d2.rate_bound(), p.d2.mag_bound()});

    pl.true_disturbance = [p](double t, int c) {
        return c == 0 ? p.d1.value(t) : p.d2.value(t);
    };

    require_controllable_upright(pl);
    return pl;
}

} // namespace esor
