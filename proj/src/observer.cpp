#include "esor/observer.hpp"

#include <cmath>
#include <string>

#include "esor/ode.hpp"

namespace esor {

namespace {

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * static_cast<double>(n - k + i) / static_cast<double>(i);
    return v;
}

void check_channel(const ChannelModel& m) {
    if (m.r < 1) throw DomainError("channel: relative degree must be >= 1");
    if (m.state_indices.size() != static_cast<std::size_t>(m.r))
        throw DomainError("channel: state index list must have r entries");
    if (!m.a || !m.b) throw DomainError("channel: a/b evaluators not set");
}

double eval_a(const ChannelModel& m, const Vec& ctx, const Vec& y) {
    const double a = m.a(ctx, y);
    check_finite(a, "channel a(x)");
    if (m.control_index >= 0 && std::abs(a) < 1e-9)
        throw DomainError("channel: control gain a(x) vanished on a controlled channel");
    return a;
}

// Compare monic polynomial coefficient vectors, relative tolerance.
void require_poly_match(const Vec& got, const Vec& want, const char* what) {
    for (std::size_t i = 0; i < want.size(); ++i) {
        const double s = std::max(1.0, std::abs(want[i]));
        if (std::abs(got[i] - want[i]) > 1e-9 * s)
            throw Error(std::string("pole placement check failed for ") + what);
    }
}

} // namespace

Mat chain_matrix(int r) {
    if (r < 1) throw DomainError("chain_matrix: r must be >= 1");
    Mat A(static_cast<std::size_t>(r), static_cast<std::size_t>(r), 0.0);
    for (int i = 0; i + 1 < r; ++i) A(i, i + 1) = 1.0;
    return A;
}

Vec chain_input(int r) {
    if (r < 1) throw DomainError("chain_input: r must be >= 1");
    Vec b(static_cast<std::size_t>(r), 0.0);
    b[static_cast<std::size_t>(r - 1)] = 1.0;
    return b;
}

Mat augmented_continuous(int r) {
    if (r < 1) throw DomainError("augmented_continuous: r must be >= 1");
    const std::size_t n = static_cast<std::size_t>(r) + 1;
    Mat A(n, n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) A(i, i + 1) = 1.0;
    return A;
}

Mat augmented_discrete(int r, double T) {
    if (r < 1) throw DomainError("augmented_discrete: r must be >= 1");
    if (!(T > 0.0)) throw DomainError("augmented_discrete: T must be positive");
    const std::size_t n = static_cast<std::size_t>(r) + 1;
    Mat A = Mat::identity(n);
    for (std::size_t i = 0; i + 1 < n; ++i) A(i, i + 1) = T;
    return A;
}

EsoGains continuous_gains(int r, double omega_o) {
    if (r < 1) throw DomainError("continuous_gains: r must be >= 1");
    if (!(omega_o > 0.0)) throw DomainError("continuous_gains: omega_o must be positive");

    EsoGains g;
    g.mode = EsoMode::Continuous;
    g.omega = omega_o;
    g.L.resize(static_cast<std::size_t>(r) + 1);
    for (int j = 1; j <= r + 1; ++j)
        g.L[static_cast<std::size_t>(j - 1)] = binom(r + 1, j) * std::pow(omega_o, j);

    // A - L*C must have all eigenvalues at -omega_o.
    Mat Acl = augmented_continuous(r);
    for (std::size_t i = 0; i < g.L.size(); ++i) Acl(i, 0) -= g.L[i];
    Vec want(static_cast<std::size_t>(r) + 2);
    for (int k = 0; k <= r + 1; ++k)
        want[static_cast<std::size_t>(k)] = binom(r + 1, k) * std::pow(omega_o, k);
    require_poly_match(char_poly(Acl), want, "continuous observer gains");
    return g;
}

EsoGains discrete_gains(int r, double omega_d, double T) {
    if (r < 1) throw DomainError("discrete_gains: r must be >= 1");
    if (!(omega_d >= 0.0 && omega_d < 1.0))
        throw DomainError("discrete_gains: pole must lie in [0, 1)");
    if (!(T > 0.0)) throw DomainError("discrete_gains: T must be positive");

    const std::size_t n = static_cast<std::size_t>(r) + 1;
    const Mat A = augmented_discrete(r, T);

    // Observability matrix of (A, C) with C = e_1'.
    Mat O(n, n, 0.0);
    Vec row(n, 0.0);
    row[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) O(i, j) = row[j];
        row = transpose(A) * row;
    }
    if (matrix_rank(O) != n)
        throw ObservabilityError("discrete_gains: canonical pair lost observability");

    // Ackermann for observers: L = q(A) * O^-1 * e_n with q(z) = (z - omega_d)^(r+1).
    Mat qA = Mat::identity(n);
    for (std::size_t f = 0; f < n; ++f) {
        Mat factor = A;
        for (std::size_t i = 0; i < n; ++i) factor(i, i) -= omega_d;
        qA = qA * factor;
    }
    Vec e_last(n, 0.0);
    e_last[n - 1] = 1.0;
    const Vec xi = linear_solve(O, e_last);

    EsoGains g;
    g.mode = EsoMode::Discrete;
    g.omega = omega_d;
    g.T = T;
    g.L = qA * xi;
    check_finite(g.L, "discrete observer gains");

    Mat Acl = A;
    for (std::size_t i = 0; i < n; ++i) Acl(i, 0) -= g.L[i];
    Vec want(n + 1);
    for (int k = 0; k <= r + 1; ++k)
        want[static_cast<std::size_t>(k)] = binom(r + 1, k) * std::pow(-omega_d, k);
    require_poly_match(char_poly(Acl), want, "discrete observer gains");
    return g;
}

double omega_to_discrete(double omega_o, double T) {
    if (!(omega_o > 0.0)) throw DomainError("omega_to_discrete: omega_o must be positive");
    if (!(T > 0.0)) throw DomainError("omega_to_discrete: T must be positive");
    return std::exp(-omega_o * T);
}

EsoState eso_init(const ChannelModel& m, const Vec& y, double t) {
    check_channel(m);
    if (m.output_index < 0 || static_cast<std::size_t>(m.output_index) >= y.size())
        throw DomainError("eso_init: output index out of range");
    EsoState s;
    s.z.assign(static_cast<std::size_t>(m.r) + 1, 0.0);
    s.z[0] = y[static_cast<std::size_t>(m.output_index)];
    s.t = t;
    return s;
}

EsoState eso_step_continuous(const EsoState& s, const Vec& y, double u_i, double dt,
                             const ChannelModel& m, const EsoGains& g,
                             const Vec& xhat_ambient) {
    check_channel(m);
    if (g.mode != EsoMode::Continuous)
        throw DomainError("eso_step_continuous: gains are not continuous-mode");
    if (g.L.size() != s.z.size() || s.z.size() != static_cast<std::size_t>(m.r) + 1)
        throw DomainError("eso_step_continuous: state/gain length mismatch");

    const std::size_t r = static_cast<std::size_t>(m.r);
    const double y_i = y[static_cast<std::size_t>(m.output_index)];

    Vec ctx = xhat_ambient;
    const auto rhs = [&](double, const Vec& z) {
        for (std::size_t j = 0; j < r; ++j) ctx[static_cast<std::size_t>(m.state_indices[j])] = z[j];
        const double a = eval_a(m, ctx, y);
        const double b = m.b(ctx, y);
        check_finite(b, "channel b(x)");
        const double inn = y_i - z[0];
        Vec dz(r + 1);
        for (std::size_t i = 0; i + 1 < r; ++i) dz[i] = z[i + 1] + g.L[i] * inn;
        dz[r - 1] = z[r] + b + a * u_i + g.L[r - 1] * inn;
        dz[r] = g.L[r] * inn;
        return dz;
    };

    EsoState out;
    out.z = rk4_step(rhs, s.z, s.t, dt);
    out.t = s.t + dt;
    return out;
}

EsoState eso_step_discrete(const EsoState& s, const Vec& y, double u_i,
                           const ChannelModel& m, const EsoGains& g,
                           const Vec& xhat_ambient) {
    check_channel(m);
    if (g.mode != EsoMode::Discrete)
        throw DomainError("eso_step_discrete: gains are not discrete-mode");
    if (g.L.size() != s.z.size() || s.z.size() != static_cast<std::size_t>(m.r) + 1)
        throw DomainError("eso_step_discrete: state/gain length mismatch");
    check_finite(s.z, "discrete eso state");

    const std::size_t r = static_cast<std::size_t>(m.r);
    const double y_i = y[static_cast<std::size_t>(m.output_index)];

    Vec ctx = xhat_ambient;
    for (std::size_t j = 0; j < r; ++j) ctx[static_cast<std::size_t>(m.state_indices[j])] = s.z[j];
    const double a = eval_a(m, ctx, y);
    const double b = m.b(ctx, y);
    check_finite(b, "channel b(x)");
    const double inn = y_i - s.z[0];

    EsoState out;
    out.z.assign(r + 1, 0.0);
    for (std::size_t i = 0; i < r + 1; ++i) {
        double v = s.z[i];
        if (i + 1 < r + 1) v += g.T * s.z[i + 1]; // Euler chain coupling
        if (i == r - 1) v += g.T * (b + a * u_i);
        v += g.L[i] * inn;
        out.z[i] = v;
    }
    check_finite(out.z, "discrete eso update");
    out.t = s.t + g.T;
    return out;
}

} // namespace esor
