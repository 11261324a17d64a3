#pragma once

namespace cavdiscord {

/// One classical fourth-order Runge-Kutta step for y' = rhs(t, y). State
/// needs the usual vector-space operators (Eigen matrices qualify).
template <class State, class Rhs>
void rk4_step(State& y, double t, double h, Rhs&& rhs) {
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k1));
    const State k3 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k2));
    const State k4 = rhs(t + h, State(y + h * k3));
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace cavdiscord
