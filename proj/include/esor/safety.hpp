#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "esor/bounds.hpp"
#include "esor/plants.hpp"
#include "esor/qp.hpp"

namespace esor {

// How the robust margin terms are applied. Strict keeps every penalty term
// and therefore needs a Lipschitz constant for the barrier gradient;
// SteadyState drops the gradient-mismatch term and sets the transfer-norm
// factor to one, trading worst-case coverage for less conservatism once the
// observer has settled.
enum class RobustMode { Strict, SteadyState };

struct BarrierSpec {
    std::string name;
    std::function<double(const Vec&)> h;
    std::function<Vec(const Vec&)> grad; // optional; finite differences when absent
    int degree = 1;                      // relative degree of h along the dynamics
    double gamma_cbf = 1.0;              // class-K slope for the final constraint
    double alpha1 = 0.0, alpha2 = 0.0;   // chain gains, degree 2 only
    double lip_grad = -1.0;              // Lipschitz constant of grad h; < 0 = unknown
};

struct LyapunovSpec {
    std::function<double(const Vec&)> V;
    std::function<Vec(const Vec&)> grad; // optional; finite differences when absent
    double lambda = 1.0;                 // required decay rate
    double p_slack = 100.0;              // weight on the slack variable
};

// Scalar affine function of the control, value(u) = c0 + c1*u.
struct Affine {
    double c0 = 0.0;
    double c1 = 0.0;
    double at(double u) const { return c0 + c1 * u; }
};

struct ControlResult {
    double u = 0.0;
    double slack = 0.0;    // CLF slack used (0 when absent or dropped)
    bool fallback = false; // soft constraint dropped, or box-corner rescue
    bool infeasible = false; // even the hard constraints could not be met
};

// Central finite differences with a per-component relative step.
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x,
                double step = 1e-5);

Vec barrier_grad(const BarrierSpec& spec, const Vec& x);

// Robustified barrier-derivative lower bound as an affine function of u:
//   grad h(xhat)·drift + grad h(xhat)·g(xhat)·u + sum_c grad h[slot_c]·fhat_c
//   - sum_c ||grad h restricted to channel c||·factor_c·gamma_c
//   - (Strict only) lip_grad·(state error bound)·phi,
// where Strict also inflates each restricted gradient norm by
// lip_grad·(state error bound) to cover evaluating at the unknown true state.
// Degree-2 barriers must be lifted first.
Affine psi_h_affine(const Plant& plant, double t, const Vec& xhat, const Vec& fhat,
                    const ErrorBoundSet& bounds, const BarrierSpec& spec,
                    RobustMode mode);

double psi_h(const Plant& plant, double t, const Vec& xhat, const Vec& fhat, double u,
             const ErrorBoundSet& bounds, const BarrierSpec& spec, RobustMode mode);

// Reduce a relative-degree-2 barrier to the degree-1 surrogate
//   psi1(x) = dh/dx[pos]*x[vel] + alpha1*h(x)
// on a chain channel (position slot feeds the velocity slot), with the final
// constraint slope alpha2. Valid when h depends on the state only through the
// channel's position component. The result has no gradient Lipschitz
// constant; supply one explicitly before using it in Strict mode.
BarrierSpec hocbf_lift(const BarrierSpec& spec, const ChannelModel& channel);

// Safety-filter QP on a single input: minimize (u - k_nom)^2
// (+ p_slack*slack^2 with a soft row) subject to hard rows c0 + c1*u >= 0,
// the soft row c0 + c1*u + slack >= 0, and the input box. When infeasible the
// soft row is dropped first; if the hard rows still admit no point, returns
// the box corner with the best worst-row margin and flags the sample.
ControlResult safety_filter(double k_nom, const std::vector<Affine>& hard,
                            const Affine* soft, double p_slack,
                            const std::array<double, 2>& u_box);

// The output-feedback robust controller: barrier constraints built from
// psi_h_affine at the state estimate plus the class-K term, optional soft
// CLF decrease built the same certainty-equivalent way.
ControlResult esor_qp_control(const Plant& plant, double t, const Vec& xhat,
                              const Vec& fhat, double k_nom,
                              const std::vector<BarrierSpec>& barriers,
                              const LyapunovSpec* clf, const ErrorBoundSet& bounds,
                              RobustMode mode, const std::array<double, 2>& u_box);

// Baseline filter with perfect state access and a caller-chosen disturbance
// vector (true values, or zeros for the uncertainty-blind variant); no
// robustness margins.
ControlResult plain_qp_control(const Plant& plant, double t, const Vec& x, const Vec& d,
                               double k_nom, const std::vector<BarrierSpec>& barriers,
                               const LyapunovSpec* clf,
                               const std::array<double, 2>& u_box);

// First-order disturbance observer on a measured scalar sigma with
// sigma_dot = a_e + b_e: estimates b_e with steady-state error at most
// sup|db_e/dt| / k_b, which is the margin the DOB baseline subtracts.
struct DobState {
    double z = 0.0;
    double k_b = 10.0;
    double b_hat = 0.0;
    double margin = 0.0;
};

DobState dob_init(double k_b, double sigma0, double margin);
DobState dob_update(const DobState& s, double sigma, double a_e, double dt);

} // namespace esor
