#include "cavdiscord/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

namespace cavdiscord {

namespace {

constexpr double kTieTol = 1e-14;
constexpr double kBoundTol = 1e-9;

double golden_minimize(const auto& fn, double lo, double hi, int iters, double& best_x, double best_val) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = fn(x2);
        }
    }
    // Endpoints matter: the theta = 0 branch sits on the domain boundary.
    for (double x : {lo, hi, x1, x2}) {
        const double v = fn(x);
        if (v < best_val - kTieTol) {
            best_val = v;
            best_x = x;
        }
    }
    return best_val;
}

}  // namespace

std::array<Eigen::Vector2cd, 2> measurement_basis(ProjectorAngles angles) {
    const double c = std::cos(angles.theta), s = std::sin(angles.theta);
    const cplx phase = std::polar(1.0, angles.phi);
    Eigen::Vector2cd first, second;
    first << c, phase * s;
    second << std::conj(phase) * s, -c;
    return {first, second};
}

std::array<ConditionalOutcome, 2> conditional_states(const TwoQubitDensityMatrix& rho, ProjectorAngles angles) {
    const auto basis = measurement_basis(angles);
    const Eigen::Matrix4cd& m = rho.matrix();
    std::array<ConditionalOutcome, 2> out;
    for (int k = 0; k < 2; ++k) {
        const Eigen::Vector2cd& b = basis[k];
        // (I (x) <b|) rho (I (x) |b>)
        Eigen::Matrix2cd block;
        for (int a = 0; a < 2; ++a) {
            for (int ap = 0; ap < 2; ++ap) {
                cplx acc = 0.0;
                for (int j = 0; j < 2; ++j)
                    for (int jp = 0; jp < 2; ++jp) acc += std::conj(b(j)) * m(2 * a + j, 2 * ap + jp) * b(jp);
                block(a, ap) = acc;
            }
        }
        const double p = block.trace().real();
        out[k].probability = std::max(p, 0.0);
        if (p > 0.0) out[k].state = block / p;
    }
    return out;
}

double bloch_length(const Eigen::Matrix2cd& state) {
    const double dz = (state(0, 0) - state(1, 1)).real();
    const double off = std::abs(0.5 * (state(0, 1) + std::conj(state(1, 0))));
    return std::min(1.0, std::sqrt(dz * dz + 4.0 * off * off));
}

double eta_value(const XStateParams& c, const CoherenceFactor& factor, ProjectorAngles angles) {
    const double cos2t = std::cos(2.0 * angles.theta);
    const double sin2t = std::sin(2.0 * angles.theta);
    const double phase = 2.0 * angles.phi + std::arg(factor.value * factor.value);
    const double a2 = factor.abs2 * factor.abs2;
    const double xy = 2.0 * (c.c1 * c.c1 + c.c2 * c.c2) + 2.0 * (c.c1 * c.c1 - c.c2 * c.c2) * std::cos(phase);
    const double eta2 = c.c3 * c.c3 * cos2t * cos2t + a2 / 4.0 * xy * sin2t * sin2t;
    return std::sqrt(std::max(eta2, 0.0));
}

double measured_conditional_entropy(const TwoQubitDensityMatrix& rho, ProjectorAngles angles) {
    double s = 0.0;
    for (const auto& outcome : conditional_states(rho, angles)) {
        if (outcome.probability > 0.0) s += outcome.probability * conditional_entropy(bloch_length(outcome.state));
    }
    return s;
}

SearchResult maximize_classical(const TwoQubitDensityMatrix& rho, const SearchOptions& options) {
    if (options.theta_points < 8 || options.phi_points < 8) {
        throw ParameterError("measurement search needs at least 8 grid points per angle");
    }
    if (options.refine_iters < 0 || options.refine_passes < 0) {
        throw ParameterError("refinement counts must be >= 0");
    }
    using std::numbers::pi;
    const double dtheta = (pi / 2.0) / (options.theta_points - 1);
    const double dphi = 2.0 * pi / options.phi_points;

    ProjectorAngles best{0.0, 0.0};
    double best_val = measured_conditional_entropy(rho, best);
    for (int i = 0; i < options.theta_points; ++i) {
        for (int j = 0; j < options.phi_points; ++j) {
            const ProjectorAngles angles{i * dtheta, j * dphi};
            const double v = measured_conditional_entropy(rho, angles);
            if (v < best_val - kTieTol) {
                best_val = v;
                best = angles;
            }
        }
    }

    for (int pass = 0; pass < options.refine_passes && options.refine_iters > 0; ++pass) {
        const double theta = best.theta;
        best_val = golden_minimize(
            [&](double phi) { return measured_conditional_entropy(rho, {theta, phi}); }, best.phi - dphi,
            best.phi + dphi, options.refine_iters, best.phi, best_val);
        const double phi = best.phi;
        best_val = golden_minimize(
            [&](double t) { return measured_conditional_entropy(rho, {t, phi}); },
            std::max(0.0, best.theta - dtheta), std::min(pi / 2.0, best.theta + dtheta), options.refine_iters,
            best.theta, best_val);
    }
    best.phi = std::fmod(best.phi, 2.0 * pi);
    if (best.phi < 0.0) best.phi += 2.0 * pi;

    SearchResult result;
    result.conditional_entropy = best_val;
    result.classical = von_neumann_entropy(rho.reduced_a()) - best_val;
    result.best = best;
    return result;
}

NumericDiscord discord_numeric(const TwoQubitDensityMatrix& rho, const XStateParams& c,
                               const CoherenceFactor& factor, const SearchOptions& options) {
    const double mutual =
        von_neumann_entropy(rho.reduced_a()) + von_neumann_entropy(rho.reduced_b()) - von_neumann_entropy(rho);
    const SearchResult search = maximize_classical(rho, options);

    NumericDiscord out;
    out.triple = make_triple(mutual, search.classical);
    out.best = search.best;
    const auto outcomes = conditional_states(rho, search.best);
    out.best_eta = bloch_length(outcomes[0].probability >= outcomes[1].probability ? outcomes[0].state
                                                                                   : outcomes[1].state);
    out.branch_bound = measurement_branch(c, std::min(factor.abs2, 1.0));
    if (out.best_eta > out.branch_bound + kBoundTol) {
        out.bound_violated = true;
        std::clog << "warning: optimal conditional Bloch length " << out.best_eta
                  << " exceeds closed-form bound " << out.branch_bound << '\n';
    }
    return out;
}

}  // namespace cavdiscord
