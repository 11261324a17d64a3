#include "cavdiscord/coherence.hpp"

#include <cmath>

namespace cavdiscord {

namespace {

constexpr cplx kI{0.0, 1.0};

// exp(z) - 1 without cancellation for small |z|.
cplx expm1(cplx z) {
    const double x = z.real(), y = z.imag();
    const double half_sin = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin, std::exp(x) * std::sin(y)};
}

void require_time(double tau) {
    if (!std::isfinite(tau) || tau < 0.0) throw ParameterError("scaled time tau must be finite and >= 0");
}

}  // namespace

std::pair<cplx, cplx> shifted_amplitudes(double tau, const ChannelParams& params) {
    require_time(tau);
    const double decay = std::exp(-params.kappa * tau);
    const cplx rot = std::polar(1.0, -tau);
    return {params.alpha * decay * rot, params.alpha * decay * std::conj(rot)};
}

cplx f_factor(double tau, const ChannelParams& params) {
    require_time(tau);
    const double n = params.mean_photons();
    const double k = params.kappa;
    const cplx rate = k + kI;
    // Both exponents are assembled before a single exp so |f| <= 1 is not
    // spoiled by intermediate overflow at large n.
    const cplx exponent = -kI * tau + n * std::expm1(-2.0 * k * tau) +
                          (n * k / rate) * (-expm1(-2.0 * rate * tau));
    return std::exp(exponent);
}

cplx chi_overlap(double tau, const ChannelParams& params) {
    const auto [plus, minus] = shifted_amplitudes(tau, params);
    return std::exp(-0.5 * std::norm(plus) - 0.5 * std::norm(minus) + std::conj(minus) * plus);
}

CoherenceFactor coherence_factor(double tau, const ChannelParams& params) {
    return CoherenceFactor::from_value(f_factor(tau, params) * chi_overlap(tau, params));
}

double asymptotic_abs2(const ChannelParams& params) {
    params.validate();
    if (!(params.kappa > 0.0)) {
        throw ParameterError("no stationary limit without dissipation (kappa = 0)");
    }
    return std::exp(-2.0 * params.mean_photons() / (1.0 + params.kappa * params.kappa));
}

TwoQubitDensityMatrix reduced_state(const XStateParams& c, const CoherenceFactor& factor) {
    if (auto report = validate_physicality(c); !report) {
        throw ParameterError("x state rejected: " + report.describe());
    }
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(kEE, kEE) = m(kGG, kGG) = (1.0 + c.c3) / 4.0;
    m(kEG, kEG) = m(kGE, kGE) = (1.0 - c.c3) / 4.0;
    const cplx corner = (c.c1 - c.c2) / 4.0 * factor.value * factor.value;
    m(kEE, kGG) = corner;
    m(kGG, kEE) = std::conj(corner);
    m(kEG, kGE) = m(kGE, kEG) = (c.c1 + c.c2) / 4.0 * factor.abs2;
    return TwoQubitDensityMatrix(m);
}

TwoQubitDensityMatrix reduced_state(const XStateParams& c, double tau, const ChannelParams& params) {
    return reduced_state(c, coherence_factor(tau, params));
}

std::array<double, 4> spectrum(const XStateParams& c, double abs2) {
    if (!(abs2 >= 0.0 && abs2 <= 1.0 + 1e-12)) throw ParameterError("spectrum: |F|^2 must lie in [0, 1]");
    const double a = std::min(abs2, 1.0);
    return {((1.0 - c.c3) + a * (c.c1 + c.c2)) / 4.0, ((1.0 - c.c3) - a * (c.c1 + c.c2)) / 4.0,
            ((1.0 + c.c3) + a * (c.c1 - c.c2)) / 4.0, ((1.0 + c.c3) - a * (c.c1 - c.c2)) / 4.0};
}

}  // namespace cavdiscord
