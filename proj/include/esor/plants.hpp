#pragma once

#include <functional>
#include <vector>

#include "esor/bounds.hpp"
#include "esor/linalg.hpp"
#include "esor/observer.hpp"

namespace esor {

// Analytic disturbance signal with exactly computable envelopes. The declared
// rate/magnitude bounds are sup|d'| and sup|d| of the signal itself.
struct DisturbanceSignal {
    enum class Kind { Zero, Constant, Sinusoid, PiecewiseLinear };

    Kind kind = Kind::Zero;
    double amplitude = 0.0; // sinusoid: amplitude * sin(2*pi*t/period + phase) + offset
    double period = 1.0;
    double phase = 0.0;
    double offset = 0.0;
    std::vector<double> knot_t, knot_v; // piecewise linear, held constant past the ends

    double value(double t) const;
    double rate_bound() const;
    double mag_bound() const;

    static DisturbanceSignal zero();
    static DisturbanceSignal constant(double c);
    static DisturbanceSignal sinusoid(double amplitude, double period, double phase = 0.0,
                                      double offset = 0.0);
    static DisturbanceSignal piecewise_linear(std::vector<double> t, std::vector<double> v);
};

// A plant ready for the control loop: known dynamics split as drift + input
// direction (single scalar input), output map, normal-form channels for the
// observers, and the ground-truth disturbances the simulator injects.
struct Plant {
    int n = 0;
    int n_y = 0;
    std::function<Vec(const Vec&, double)> drift; // known part, no input, no disturbance
    std::function<Vec(const Vec&)> input;         // g(x)
    std::function<void(const Vec&)> check_domain; // throws DomainError outside validity
    std::function<double(const Vec&)> nominal;    // k(x)
    std::vector<ChannelModel> channels;
    std::vector<DisturbanceBound> dist_bounds;    // declared envelope per channel
    std::function<double(double, int)> true_disturbance; // d_c(t)
    std::vector<int> measured_states;             // y_i = x[measured_states[i]]
};

Vec measure(const Plant& p, const Vec& x);
// drift + input*u + per-channel disturbance injection (simulation truth).
Vec true_field(const Plant& p, const Vec& x, double u, double t);

// ---------------------------------------------------------------- cruise ---

struct AccParams {
    double m = 1650.0;  // kg
    double f0 = 0.1;    // N
    double f1 = 5.0;    // N*s/m
    double f2 = 0.25;   // N*s^2/m^2
    double v_d = 24.0;  // m/s
    double tau_d = 1.8; // s
    double grav = 9.81; // m/s^2
    double u_frac_limit = 0.3; // input box as a fraction of m*g
    bool v_l_known = true;     // lead speed directly measurable
    DisturbanceSignal d0 = DisturbanceSignal::sinusoid(0.2 * 9.81, 10.0);
    DisturbanceSignal v_l = DisturbanceSignal::piecewise_linear(
        {0.0, 15.5, 17.5, 22.0, 24.0}, {14.0, 14.0, 10.0, 10.0, 18.0});
};

double acc_drag(const AccParams& p, double v);

// SI form, u in Newtons: x = (v_f, D).
Vec acc_dynamics(const Vec& x, double u_newton, double t, const AccParams& p);

// Control-loop wrapper in fraction units: the plant input is u/(m*g), the
// box is +-u_frac_limit, and the nominal law is the drag feedforward.
// With v_l_known there is a single observed channel (the ego-speed one) and
// the lead speed enters the drift as a known feedthrough; otherwise a second
// channel estimates the lead speed from the distance measurement.
Plant make_acc_plant(const AccParams& p);

// ---------------------------------------------------------------- segway ---

struct SegwayParams {
    double m_w = 4.97;             // wheel pair mass, kg
    double R = 0.18;               // wheel radius, m
    double J_w = 0.5 * 4.97 * 0.18 * 0.18; // wheel pair spin inertia (solid disc)
    double m_b = 44.8;             // body mass, kg
    double l = 0.20;               // body COM height above axle, m
    double J_b = 3.0;              // body pitch inertia about COM, kg*m^2
    double K1 = 3.0;               // motor torque per volt, N*m/V
    double K2 = 1.2;               // back-EMF / viscous drag torque, N*m*s/rad
    double grav = 9.81;
    double K_p = 4.0, K_v = 8.0, K_phi = 40.0, K_omega = 10.0; // nominal gains
    double p_d = 1.0;              // target wheel position, m
    double u_limit = 25.0;         // voltage box
    DisturbanceSignal d1 = DisturbanceSignal::sinusoid(2.0, 10.0);
    DisturbanceSignal d2 = DisturbanceSignal::sinusoid(2.0, 10.0, 1.5707963267948966);
};

// Control-affine pieces of the velocity dynamics at a given pose.
struct SegwayAffine {
    double f_v, f_w, g_v, g_w;
};

SegwayAffine segway_affine(double phi, double v, double w, const SegwayParams& p);

// x = (p, phi, v, w); throws DomainError once |phi| >= pi/2.
Vec segway_dynamics(const Vec& x, double u, double t, const SegwayParams& p);

double segway_nominal(const Vec& x, const SegwayParams& p);

// Two relative-degree-2 channels, (p, v) and (phi, w), sharing the input.
// Construction verifies that the upright linearization is controllable.
Plant make_segway_plant(const SegwayParams& p);

} // namespace esor
