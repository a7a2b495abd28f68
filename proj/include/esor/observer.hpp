#pragma once

#include <functional>
#include <vector>

#include "esor/linalg.hpp"

namespace esor {

// One SISO output channel in integrator-chain form:
//   z_1' = z_2, ..., z_r' = b(.) + a(.)u + f
// The a/b evaluators receive the full-state estimate context and the latest
// measurement vector; each plant decides which components it reads from where
// (directly measured quantities come from y, the rest from the estimate).
struct ChannelModel {
    int r = 1;
    std::vector<int> state_indices; // this channel's slots in the full plant state
    int output_index = 0;           // which measurement drives the observer
    int control_index = -1;         // -1: the input does not enter this channel
    std::function<double(const Vec& xhat_full, const Vec& y)> a;
    std::function<double(const Vec& xhat_full, const Vec& y)> b;
};

enum class EsoMode { Continuous, Discrete };

struct EsoGains {
    EsoMode mode = EsoMode::Continuous;
    double omega = 0.0; // bandwidth in rad/s (continuous) or pole in [0,1) (discrete)
    double T = 0.0;     // discrete update period in seconds
    Vec L;              // r+1 gains
};

// Augmented estimate [x_chain; f] for one channel.
struct EsoState {
    Vec z;
    double t = 0.0;
};

// Integrator-chain building blocks, chain length r.
Mat chain_matrix(int r);           // strict upper shift, r x r
Vec chain_input(int r);            // last unit vector, length r
Mat augmented_continuous(int r);   // [[A0, B0], [0, 0]]
Mat augmented_discrete(int r, double T); // [[I + A0*T, B0*T], [0, 1]]

// Gains placing all observer poles at -omega_o: L_j = C(r+1, j) * omega_o^j.
EsoGains continuous_gains(int r, double omega_o);

// Gains placing all poles of the discrete prediction matrix at omega_d in
// [0, 1), via Ackermann's formula on the canonical observable pair. Both the
// observability check and the closed-loop characteristic polynomial match are
// performed defensively.
EsoGains discrete_gains(int r, double omega_d, double T);

// Matched discrete pole for a continuous bandwidth: exp(-omega_o * T).
double omega_to_discrete(double omega_o, double T);

// Fresh observer state: measured slot from y, everything else zero.
EsoState eso_init(const ChannelModel& m, const Vec& y, double t = 0.0);

// One RK4 step of the observer ODE. The channel's own chain slots inside
// `xhat_ambient` are overlaid with the current stage values before a/b are
// evaluated, so cross-channel coupling sees the other channels' estimates
// frozen at the sub-step start.
EsoState eso_step_continuous(const EsoState& s, const Vec& y, double u_i, double dt,
                             const ChannelModel& m, const EsoGains& g,
                             const Vec& xhat_ambient);

// One exact discrete observer update (period g.T).
EsoState eso_step_discrete(const EsoState& s, const Vec& y, double u_i,
                           const ChannelModel& m, const EsoGains& g,
                           const Vec& xhat_ambient);

} // namespace esor
