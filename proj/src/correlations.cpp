#include "cavdiscord/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavdiscord/coherence.hpp"

namespace cavdiscord {

namespace {

double xlog2x(double x) {
    if (x < -kPositivityTol) {
        std::ostringstream os;
        os << "probability " << x << " below zero";
        throw InvariantError(os.str());
    }
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

void require_abs2(double abs2) {
    if (!(abs2 >= 0.0 && abs2 <= 1.0 + 1e-12)) throw ParameterError("|F|^2 must lie in [0, 1]");
}

double clamp_small_negative(double v, const char* what) {
    if (v >= 0.0) return v;
    if (v >= -kPositivityTol) return 0.0;
    std::ostringstream os;
    os << what << " = " << v << " is negative";
    throw InvariantError(os.str());
}

}  // namespace

double binary_entropy(double p) {
    if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) throw ParameterError("binary entropy: p must lie in [0, 1]");
    p = std::clamp(p, 0.0, 1.0);
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double conditional_entropy(double eta) {
    if (!(eta >= -1e-12 && eta <= 1.0 + 1e-12)) throw ParameterError("eta must lie in [0, 1]");
    eta = std::clamp(eta, 0.0, 1.0);
    return -xlog2x((1.0 - eta) / 2.0) - xlog2x((1.0 + eta) / 2.0);
}

double shannon_entropy_bits(std::span<const double> probabilities) {
    double s = 0.0;
    for (double p : probabilities) s -= xlog2x(p);
    return s;
}

double von_neumann_entropy(const TwoQubitDensityMatrix& rho) {
    const Eigen::Vector4d eig = rho.eigenvalues();
    return shannon_entropy_bits(std::span<const double>(eig.data(), 4));
}

double von_neumann_entropy(const Eigen::Matrix2cd& rho) {
    const Eigen::Matrix2cd sym = 0.5 * (rho + rho.adjoint());
    const Eigen::Vector2d eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(sym, Eigen::EigenvaluesOnly).eigenvalues();
    return shannon_entropy_bits(std::span<const double>(eig.data(), 2));
}

double mutual_information(const XStateParams& c, double abs2) {
    const auto lambda = spectrum(c, abs2);
    double sum = 0.0;
    for (double l : lambda) sum += xlog2x(l);
    return 2.0 + sum;
}

double w_factor(const XStateParams& c, double abs2) {
    require_abs2(abs2);
    return std::min(abs2, 1.0) * std::max(std::abs(c.c1), std::abs(c.c2));
}

double measurement_branch(const XStateParams& c, double abs2) {
    return std::max(std::abs(c.c3), w_factor(c, abs2));
}

double classical_from_branch(double m) {
    if (!(m >= 0.0 && m <= 1.0 + 1e-12)) throw ParameterError("branch value m must lie in [0, 1]");
    m = std::min(m, 1.0);
    double sum = 0.0;
    for (int j = 1; j <= 2; ++j) {
        const double x = 1.0 + (j == 1 ? -m : m);
        sum += x > 0.0 ? x / 2.0 * std::log2(x) : 0.0;
    }
    return sum;
}

double classical_correlation_closed(const XStateParams& c, double abs2) {
    return classical_from_branch(measurement_branch(c, abs2));
}

CorrelationTriple make_triple(double mutual_info, double classical) {
    CorrelationTriple t;
    t.mutual_info = clamp_small_negative(mutual_info, "mutual information");
    t.classical = clamp_small_negative(classical, "classical correlation");
    t.discord = t.mutual_info - t.classical;
    if (t.discord < 0.0) {
        clamp_small_negative(t.discord, "discord");
        t.classical = t.mutual_info;
        t.discord = 0.0;
    }
    return t;
}

CorrelationTriple discord_closed(const XStateParams& c, double abs2) {
    if (auto report = validate_physicality(c); !report) {
        throw ParameterError("x state rejected: " + report.describe());
    }
    return make_triple(mutual_information(c, abs2), classical_correlation_closed(c, abs2));
}

CorrelationTriple frozen_family_correlations(double c3, double abs2) {
    if (!(std::abs(c3) < 1.0)) throw ParameterError("frozen family needs |c3| < 1");
    require_abs2(abs2);
    const double a = std::min(abs2, 1.0);
    auto half_xlog = [](double x) { return x > 0.0 ? 0.5 * x * std::log2(x) : 0.0; };
    const double mutual = half_xlog(1.0 + c3) + half_xlog(1.0 - c3) + half_xlog(1.0 + a) + half_xlog(1.0 - a);
    return make_triple(mutual, classical_from_branch(std::max(std::abs(c3), a)));
}

CorrelationTriple werner_correlations(double r, double abs2) {
    if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("werner: r must lie in [0, 1]");
    require_abs2(abs2);
    const double a = std::min(abs2, 1.0);
    const double lambda[4] = {(1.0 - r) / 4.0, (1.0 - r) / 4.0, (1.0 + r + 2.0 * r * a) / 4.0,
                              (1.0 + r - 2.0 * r * a) / 4.0};
    double sum = 0.0;
    for (double l : lambda) sum += xlog2x(l);
    const double n = std::max(r, r * a);
    return make_triple(2.0 + sum, classical_from_branch(n));
}

}  // namespace cavdiscord
