#include "esor/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "esor/ode.hpp"

namespace esor {

double p_value(int r, long k, double omega_d) {
    if (r < 0) throw DomainError("p_value: r must be >= 0");
    if (k < 1) throw DomainError("p_value: k must be >= 1");
    if (!(omega_d >= 0.0 && omega_d < 1.0))
        throw DomainError("p_value: pole must lie in [0, 1)");

    if (k <= static_cast<long>(r) + 1) return 1.0;
    if (omega_d == 0.0) return 0.0; // every term carries omega^(k-i) with k-i >= 1

    // term_1 = omega^(k-1); term_i = term_{i-1} * (1-omega)*(k-i+1) / ((i-1)*omega)
    double term = std::pow(omega_d, static_cast<double>(k - 1));
    double sum = term;
    for (int i = 2; i <= r + 1; ++i) {
        term *= (1.0 - omega_d) * static_cast<double>(k - i + 1) /
                (static_cast<double>(i - 1) * omega_d);
        sum += term;
    }
    return sum;
}

double p_sum(int r, double omega_d, double tol) {
    if (r < 0) throw DomainError("p_sum: r must be >= 0");
    if (omega_d < 0.0) throw DomainError("p_sum: pole must be >= 0");
    if (omega_d >= 1.0) throw NonConvergentError("p_sum: series diverges for pole >= 1");
    if (!(tol > 0.0)) throw DomainError("p_sum: tol must be positive");

    double s = static_cast<double>(r + 1); // k = 1 .. r+1 contribute 1 each
    if (omega_d == 0.0) return s;

    // Successive-term ratio tends to omega_d from above, so once it falls
    // below rho < 1 the tail is bounded by term * rho / (1 - rho).
    const double rho = 0.5 * (1.0 + omega_d);
    const long k_max = 50'000'000;
    double prev = 0.0;
    for (long k = static_cast<long>(r) + 2; k <= k_max; ++k) {
        const double term = p_value(r, k, omega_d);
        s += term;
        if (term == 0.0) return s;
        if (prev > 0.0 && term < rho * prev && term * rho / (1.0 - rho) < tol) return s;
        prev = term;
    }
    throw NonConvergentError("p_sum: truncation did not converge");
}

double gamma_bound(int r, double omega_d, double T, double l_f) {
    if (!(T > 0.0)) throw DomainError("gamma_bound: T must be positive");
    if (l_f < 0.0) throw DomainError("gamma_bound: l_f must be >= 0");
    if (l_f == 0.0) return 0.0;
    return (p_sum(r, omega_d) * l_f) * T;
}

TransferL1 transfer_l1(const Mat& A_cl, const Vec& b, double tol) {
    if (A_cl.rows != A_cl.cols) throw DomainError("transfer_l1: matrix not square");
    if (A_cl.rows != b.size()) throw DomainError("transfer_l1: input size mismatch");
    check_finite(A_cl, "transfer_l1 matrix");
    check_finite(b, "transfer_l1 input");

    const std::size_t n = A_cl.rows;
    TransferL1 out;
    out.g.assign(n, 0.0);
    out.h.assign(n, 0.0);

    const double bnorm = norm_inf(b);
    if (bnorm == 0.0) return out;

    double amax = 0.0;
    for (double v : A_cl.a) amax = std::max(amax, std::abs(v));
    const double dt = std::min(1e-4, 0.01 / std::max(1.0, amax));

    // Slowest-mode guess from the determinant (geometric mean of the poles).
    const Vec cp = char_poly(A_cl);
    const double pole_gm =
        std::max(std::pow(std::abs(cp[n]), 1.0 / static_cast<double>(n)), 1e-6);
    const double t_min = 5.0 * static_cast<double>(n) / pole_gm;
    const double t_cap = std::max(400.0 * static_cast<double>(n) / pole_gm, 100.0 * t_min);

    const auto field = [&](double, const Vec& x) { return A_cl * x; };
    const auto abs_of = [&](const Vec& x, Vec& ax, Vec& ay) {
        const Vec y = A_cl * x;
        for (std::size_t i = 0; i < n; ++i) {
            ax[i] = std::abs(x[i]);
            ay[i] = std::abs(y[i]);
        }
    };

    Vec x = b;
    Vec f0(n), g0(n), f1(n), g1(n), f2(n), g2(n);
    abs_of(x, f0, g0);
    double t = 0.0;
    while (true) {
        // Two RK4 steps per composite-Simpson panel.
        x = rk4_step(field, x, t, dt);
        abs_of(x, f1, g1);
        x = rk4_step(field, x, t + dt, dt);
        abs_of(x, f2, g2);
        t += 2.0 * dt;
        for (std::size_t i = 0; i < n; ++i) {
            out.g[i] += dt / 3.0 * (f0[i] + 4.0 * f1[i] + f2[i]);
            out.h[i] += dt / 3.0 * (g0[i] + 4.0 * g1[i] + g2[i]);
        }
        f0 = f2;
        g0 = g2;

        const double xn = norm_inf(x);
        if (xn > 1e9 * std::max(1.0, bnorm))
            throw NotHurwitzError("transfer_l1: impulse response diverges");
        if (t >= t_min && xn < tol * std::max(1.0, bnorm)) break;
        if (t > t_cap)
            throw NotHurwitzError("transfer_l1: impulse response failed to decay");
    }

    for (std::size_t i = 0; i < n; ++i) out.h[i] += std::abs(b[i]); // direct feedthrough
    return out;
}

double phi_bound(const std::function<Vec(const Vec&, double)>& dyn,
                 const std::vector<std::array<double, 2>>& x_box,
                 const std::array<double, 2>& u_box, double b_f, int grid_n) {
    if (grid_n < 2) throw DomainError("phi_bound: need at least 2 grid points per axis");
    if (x_box.empty()) throw DomainError("phi_bound: empty state box");
    if (b_f < 0.0) throw DomainError("phi_bound: b_f must be >= 0");
    for (const auto& [lo, hi] : x_box)
        if (!(lo <= hi)) throw DomainError("phi_bound: inverted state box");
    if (!(u_box[0] <= u_box[1])) throw DomainError("phi_bound: inverted input box");

    const std::size_t nx = x_box.size();
    const auto coord = [&](double lo, double hi, int i) {
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    };

    double worst = 0.0;
    Vec x(nx, 0.0);
    std::vector<int> idx(nx, 0);
    while (true) {
        for (std::size_t d = 0; d < nx; ++d) x[d] = coord(x_box[d][0], x_box[d][1], idx[d]);
        for (int iu = 0; iu < grid_n; ++iu) {
            const double u = coord(u_box[0], u_box[1], iu);
            worst = std::max(worst, norm2(dyn(x, u)));
        }
        std::size_t d = 0;
        while (d < nx && ++idx[d] == grid_n) idx[d++] = 0;
        if (d == nx) break;
    }
    return worst + b_f;
}

ErrorBoundSet assemble_error_bounds(const std::vector<ChannelModel>& channels,
                                    double omega_o, double T,
                                    const std::vector<DisturbanceBound>& db,
                                    const std::function<Vec(const Vec&, double)>& dyn,
                                    const std::vector<std::array<double, 2>>& x_box,
                                    const std::array<double, 2>& u_box, int grid_n) {
    if (channels.size() != db.size())
        throw DomainError("assemble_error_bounds: one disturbance bound per channel required");

    ErrorBoundSet set;
    double b_f_sq = 0.0;
    for (std::size_t c = 0; c < channels.size(); ++c) {
        const ChannelModel& m = channels[c];
        ChannelBounds cb;
        cb.r = m.r;
        cb.T = T;
        cb.l_f = db[c].l_f;
        cb.b_f = db[c].b_f;
        cb.omega_d = omega_to_discrete(omega_o, T);
        cb.gamma = gamma_bound(m.r, cb.omega_d, T, cb.l_f);

        const EsoGains g = continuous_gains(m.r, omega_o);
        Mat A_cl = chain_matrix(m.r);
        for (int i = 0; i < m.r; ++i) A_cl(static_cast<std::size_t>(i), 0) -= g.L[static_cast<std::size_t>(i)];
        const TransferL1 t1 = transfer_l1(A_cl, chain_input(m.r));
        cb.g_l1 = t1.g;
        cb.h_l1 = t1.h;
        cb.l0c0g_l1.assign(static_cast<std::size_t>(m.r), 0.0);
        for (int i = 0; i < m.r; ++i)
            cb.l0c0g_l1[static_cast<std::size_t>(i)] =
                std::abs(g.L[static_cast<std::size_t>(i)]) * t1.g[0];
        cb.state_bound = scale(cb.g_l1, cb.gamma);
        cb.deriv_bound = scale(cb.h_l1, cb.gamma);
        cb.factor_strict = norm2(cb.h_l1) + norm2(cb.l0c0g_l1);

        b_f_sq += db[c].b_f * db[c].b_f;
        set.channel.push_back(std::move(cb));
    }
    set.phi = phi_bound(dyn, x_box, u_box, std::sqrt(b_f_sq), grid_n);
    set.phi_grid_n = grid_n;
    return set;
}

ErrorBoundSet zero_bounds(const std::vector<ChannelModel>& channels) {
    ErrorBoundSet set;
    for (const ChannelModel& m : channels) {
        ChannelBounds cb;
        cb.r = m.r;
        cb.g_l1.assign(static_cast<std::size_t>(m.r), 0.0);
        cb.h_l1 = cb.g_l1;
        cb.l0c0g_l1 = cb.g_l1;
        cb.state_bound = cb.g_l1;
        cb.deriv_bound = cb.g_l1;
        set.channel.push_back(std::move(cb));
    }
    return set;
}

} // namespace esor
