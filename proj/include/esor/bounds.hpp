#pragma once

#include <array>
#include <functional>
#include <vector>

#include "esor/linalg.hpp"
#include "esor/observer.hpp"

namespace esor {

// Declared disturbance envelope for one channel: |df/dt| <= l_f, |f| <= b_f.
struct DisturbanceBound {
    double l_f = 0.0;
    double b_f = 0.0;
};

// Entrywise L1 norms of the impulse responses x(t) (from state 0, input b)
// and A_cl*x(t) + feedthrough; the second one bounds derivative errors.
struct TransferL1 {
    Vec g;
    Vec h;
};

struct ChannelBounds {
    int r = 1;
    double omega_d = 0.0;   // discrete-domain pole used for gamma
    double T = 0.0;         // estimation sample time
    double l_f = 0.0;
    double b_f = 0.0;
    double gamma = 0.0;     // disturbance estimation error bound
    Vec g_l1;               // per-state L1 factors of the error propagation
    Vec h_l1;               // per-state L1 factors of the error-derivative map
    Vec l0c0g_l1;           // innovation feedback factors
    Vec state_bound;        // g_l1 * gamma
    Vec deriv_bound;        // h_l1 * gamma
    double factor_strict = 0.0; // ||h_l1|| + ||l0c0g_l1||, the full penalty factor
};

struct ErrorBoundSet {
    std::vector<ChannelBounds> channel;
    double phi = 0.0;      // worst-case ||xdot|| over the operating boxes
    int phi_grid_n = 0;
};

// Convolution-kernel weight of the disturbance estimation error at step k:
// 1 for 1 <= k <= r+1, then the binomial-tail series in the pole omega_d.
// Evaluated with incremental products, no factorials of k.
double p_value(int r, long k, double omega_d);

// Sum of p(k) over k >= 1, truncated when a geometric tail envelope drops
// below tol. Throws NonConvergentError for omega_d >= 1.
double p_sum(int r, double omega_d, double tol = 1e-12);

// Disturbance estimation error bound: p_sum(r, omega_d) * l_f * T.
double gamma_bound(int r, double omega_d, double T, double l_f);

// Entrywise L1 norms for the stable system xdot = A_cl x driven from x(0)=b.
// g[i] = integral |x_i| dt; h[i] = integral |(A_cl x)_i| dt + |b_i|.
// Throws NotHurwitzError when the response fails to decay.
TransferL1 transfer_l1(const Mat& A_cl, const Vec& b, double tol = 1e-10);

// Worst-case speed of the state over compact boxes: max ||dyn(x, u)|| + b_f,
// sampled on a regular grid that always contains the box corners.
double phi_bound(const std::function<Vec(const Vec&, double)>& dyn,
                 const std::vector<std::array<double, 2>>& x_box,
                 const std::array<double, 2>& u_box, double b_f, int grid_n);

// Full per-channel bound assembly for a given observer bandwidth and sample
// time, plus the global phi over the configured operating boxes.
ErrorBoundSet assemble_error_bounds(const std::vector<ChannelModel>& channels,
                                    double omega_o, double T,
                                    const std::vector<DisturbanceBound>& db,
                                    const std::function<Vec(const Vec&, double)>& dyn,
                                    const std::vector<std::array<double, 2>>& x_box,
                                    const std::array<double, 2>& u_box, int grid_n);

// All-zero bound set with matching channel shapes (for the baselines that
// assume perfect knowledge).
ErrorBoundSet zero_bounds(const std::vector<ChannelModel>& channels);

} // namespace esor
