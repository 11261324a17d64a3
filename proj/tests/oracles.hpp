#pragma once

// Test-only reference computations. Nothing here calls into the library's
// closed forms: each routine takes the long way round (series, dense
// Kronecker products, brute-force grids) so it can check them.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "cavdiscord/statespace.hpp"

namespace oracle {

using cplx = std::complex<double>;

// Values computed offline with mpmath at 30 digits, from the defining
// formulas (Fock-series overlap, bisection on |F|^2, direct entropy sums).
namespace frozen {
inline constexpr double kChiHalfPi = 0.18099751116029339;  // alpha=1, kappa=0.05, tau=pi/2
inline constexpr cplx kFAtPi{-0.76413148793145923, 0.010275322156832285};  // alpha=1, kappa=0.05
inline constexpr double kAbs2AtPi = 0.58400251309377252;
inline constexpr cplx kFComplexAlpha{-0.3723211657266001, -0.39022206919985862};  // alpha=0.6+0.5i, kappa=0.3, tau=2.3
inline constexpr double kOneMinusH08 = 0.27807190511263765;
inline constexpr double kH08 = 0.72192809488736235;
inline constexpr double kOneMinusH085 = 0.39015969528359958;
inline constexpr double kAbs2Inf_a08_k005 = 0.27892621903127199;
inline constexpr double kQInf_a08_k005_c06 = 0.056872053651918341;
inline constexpr double kFirstCrossing_c06_a1 = 0.370142459220489;
inline constexpr double kFirstCrossing_c06_a12 = 0.305558334245818;
inline constexpr double kCrossings_c06_a08[3] = {0.470849835896084, 2.84157201221699, 3.44789563688801};
inline constexpr double kFirstCrossing_c099_a1 = 0.0502307690770743;
inline constexpr double kWernerQInf_r09_a05_k01 = 0.24329154426884596;
inline constexpr double kWernerQInf_r09_a05_k1 = 0.4175897260164319;
inline constexpr double kWernerI_r07_a03 = 0.42797524048504865;
inline constexpr double kWernerC_r07 = 0.39015969528359958;
inline constexpr double kWernerQ_r07_a03 = 0.037815545201449072;
}  // namespace frozen

/// <beta|gamma> for coherent states, by direct Fock-basis summation.
inline cplx coherent_overlap_series(cplx beta, cplx gamma, int terms = 60) {
    cplx sum = 0.0, term = 1.0;
    for (int n = 0; n < terms; ++n) {
        sum += term;
        term *= std::conj(beta) * gamma / static_cast<double>(n + 1);
    }
    return sum * std::exp(-0.5 * (std::norm(beta) + std::norm(gamma)));
}

/// chi(tau) = <alpha e^{-(kappa - i) tau} | alpha e^{-(kappa + i) tau}> by series.
inline cplx chi_series(double tau, cplx alpha, double kappa, int terms = 60) {
    const cplx plus = alpha * std::exp(cplx(-kappa, -1.0) * tau);
    const cplx minus = alpha * std::exp(cplx(-kappa, 1.0) * tau);
    return coherent_overlap_series(minus, plus, terms);
}

inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

inline Eigen::Matrix2cd partial_trace_b(const Eigen::Matrix4cd& m) {
    Eigen::Matrix2cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    return out;
}

inline Eigen::Matrix2cd projector(double theta, double phi, int k) {
    Eigen::Vector2cd v;
    if (k == 0) {
        v << std::cos(theta), std::polar(1.0, phi) * std::sin(theta);
    } else {
        v << std::polar(1.0, -phi) * std::sin(theta), -std::cos(theta);
    }
    return v * v.adjoint();
}

struct DenseOutcome {
    double p;
    Eigen::Matrix2cd state;
};

/// (I (x) B_k) rho (I (x) B_k) / p_k, traced over B.
inline DenseOutcome dense_conditional(const Eigen::Matrix4cd& rho, double theta, double phi, int k) {
    const Eigen::Matrix4cd p4 = kron(Eigen::Matrix2cd::Identity(), projector(theta, phi, k));
    const Eigen::Matrix4cd post = p4 * rho * p4;
    const double p = post.trace().real();
    return {p, partial_trace_b(post) / p};
}

inline double entropy_bits(const Eigen::VectorXd& eig) {
    double s = 0.0;
    for (double x : eig)
        if (x > 1e-300) s -= x * std::log2(x);
    return s;
}

inline double qubit_entropy(const Eigen::Matrix2cd& m) {
    return entropy_bits(Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(m).eigenvalues());
}

/// Plain brute-force classical correlation over a theta x phi grid, no refinement.
inline double brute_force_classical(const Eigen::Matrix4cd& rho, int n_theta, int n_phi) {
    using std::numbers::pi;
    double best = 1e300;
    for (int i = 0; i < n_theta; ++i) {
        const double theta = (pi / 2.0) * i / (n_theta - 1);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * pi * j / n_phi;
            double s = 0.0;
            for (int k = 0; k < 2; ++k) {
                const auto out = dense_conditional(rho, theta, phi, k);
                if (out.p > 1e-15) s += out.p * qubit_entropy(out.state);
            }
            best = std::min(best, s);
        }
    }
    Eigen::Matrix2cd rho_a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rho_a(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    return qubit_entropy(rho_a) - best;
}

/// Uniform sample from the tetrahedron of physical (c1, c2, c3) by rejection.
inline cavdiscord::XStateParams random_physical_x(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const cavdiscord::XStateParams c{u(rng), u(rng), u(rng)};
        if (1 - c.c1 - c.c2 - c.c3 >= 0 && 1 - c.c1 + c.c2 + c.c3 >= 0 && 1 + c.c1 - c.c2 + c.c3 >= 0 &&
            1 + c.c1 + c.c2 - c.c3 >= 0)
            return c;
    }
}

inline double binary_entropy(double p) {
    auto h = [](double x) { return x > 0 ? -x * std::log2(x) : 0.0; };
    return h(p) + h(1 - p);
}

}  // namespace oracle
