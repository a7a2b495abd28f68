#pragma once

#include "esor/errors.hpp"
#include "esor/linalg.hpp"

namespace esor {

// Classical fourth-order Runge-Kutta step for dx/dt = f(t, x).
// Every stage derivative is checked; a NaN/Inf anywhere aborts the step with
// NonFiniteError so the caller can attribute the blow-up to a time and state.
template <class F>
Vec rk4_step(F&& f, const Vec& x, double t, double dt) {
    if (!(dt > 0.0)) throw DomainError("rk4_step: dt must be positive");
    const double h2 = 0.5 * dt;

    const Vec k1 = f(t, x);
    check_finite(k1, "rk4 stage 1 derivative");
    const Vec k2 = f(t + h2, axpy(x, h2, k1));
    check_finite(k2, "rk4 stage 2 derivative");
    const Vec k3 = f(t + h2, axpy(x, h2, k2));
    check_finite(k3, "rk4 stage 3 derivative");
    const Vec k4 = f(t + dt, axpy(x, dt, k3));
    check_finite(k4, "rk4 stage 4 derivative");

    Vec out(x.size());
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

} // namespace esor
