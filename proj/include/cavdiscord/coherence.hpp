#pragma once

#include <array>
#include <utility>

#include "cavdiscord/statespace.hpp"

namespace cavdiscord {

/// F(tau) = f(tau) chi(tau), the only channel quantity the reduced two-qubit
/// state depends on. The |ee><gg| coherence picks up F^2 and |eg><ge| picks
/// up |F|^2.
struct CoherenceFactor {
    cplx value{1.0, 0.0};
    double abs2 = 1.0;

    static CoherenceFactor from_value(cplx v) { return {v, std::norm(v)}; }
};

/// Damped coherent amplitudes conditioned on the atom being excited (first)
/// or in the ground state (second): alpha exp(-(kappa +/- i) tau).
std::pair<cplx, cplx> shifted_amplitudes(double tau, const ChannelParams& params);

cplx f_factor(double tau, const ChannelParams& params);

/// <alpha_-(tau)|alpha_+(tau)>.
cplx chi_overlap(double tau, const ChannelParams& params);

CoherenceFactor coherence_factor(double tau, const ChannelParams& params);

/// Limit of |F(tau)|^2 as tau -> infinity: exp(-2|alpha|^2 / (1 + kappa^2)).
/// Requires kappa > 0; without dissipation |F| keeps oscillating.
double asymptotic_abs2(const ChannelParams& params);

TwoQubitDensityMatrix reduced_state(const XStateParams& c, const CoherenceFactor& factor);
TwoQubitDensityMatrix reduced_state(const XStateParams& c, double tau, const ChannelParams& params);

/// Closed-form eigenvalues of the evolved state, ordered
/// [(1-c3) + a(c1+c2)]/4, [(1-c3) - a(c1+c2)]/4, [(1+c3) + a(c1-c2)]/4, [(1+c3) - a(c1-c2)]/4
/// with a = |F|^2.
std::array<double, 4> spectrum(const XStateParams& c, double abs2);

}  // namespace cavdiscord
