#include "cavdiscord/statespace.hpp"

#include <cmath>
#include <sstream>

namespace cavdiscord {

void ChannelParams::validate() const {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw ParameterError("channel: alpha must be finite");
    }
    if (!std::isfinite(kappa) || kappa < 0.0) {
        throw ParameterError("channel: kappa must be finite and >= 0");
    }
}

std::string PhysicalityReport::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i];
    }
    return os.str();
}

std::array<double, 4> bell_eigenvalues(const XStateParams& c) {
    return {(1.0 - c.c1 - c.c2 - c.c3) / 4.0, (1.0 - c.c1 + c.c2 + c.c3) / 4.0,
            (1.0 + c.c1 - c.c2 + c.c3) / 4.0, (1.0 + c.c1 + c.c2 - c.c3) / 4.0};
}

PhysicalityReport validate_physicality(const XStateParams& c) {
    static constexpr const char* kEigenLabels[4] = {
        "(1-c1-c2-c3)/4", "(1-c1+c2+c3)/4", "(1+c1-c2+c3)/4", "(1+c1+c2-c3)/4"};

    PhysicalityReport report;
    const double coeffs[3] = {c.c1, c.c2, c.c3};
    for (int i = 0; i < 3; ++i) {
        if (!std::isfinite(coeffs[i]) || std::abs(coeffs[i]) > 1.0) {
            std::ostringstream os;
            os << "|c" << (i + 1) << "| = " << std::abs(coeffs[i]) << " exceeds 1";
            report.violations.push_back(os.str());
        }
    }
    const auto eig = bell_eigenvalues(c);
    for (int i = 0; i < 4; ++i) {
        if (eig[i] < -kPositivityTol) {
            std::ostringstream os;
            os << "eigenvalue " << kEigenLabels[i] << " = " << eig[i] << " < 0";
            report.violations.push_back(os.str());
        }
    }
    return report;
}

std::string density_matrix_defect(const Eigen::Matrix4cd& m, double positivity_tol) {
    std::ostringstream os;
    if (!m.allFinite()) return "non-finite entries";
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        os << "not Hermitian (max |rho - rho^dag| = " << herm << ")";
        return os.str();
    }
    const cplx tr = m.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        os << "trace " << tr.real() << "+" << tr.imag() << "i differs from 1";
        return os.str();
    }
    const Eigen::Matrix4cd sym = 0.5 * (m + m.adjoint());
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(sym, Eigen::EigenvaluesOnly)
                               .eigenvalues()
                               .minCoeff();
    if (min_eig < -positivity_tol) {
        os << "negative eigenvalue " << min_eig;
        return os.str();
    }
    return {};
}

TwoQubitDensityMatrix::TwoQubitDensityMatrix(const Eigen::Matrix4cd& m) : m_(m) {
    if (auto defect = density_matrix_defect(m_); !defect.empty()) {
        throw InvariantError("density matrix: " + defect);
    }
}

Eigen::Vector4d TwoQubitDensityMatrix::eigenvalues() const {
    const Eigen::Matrix4cd sym = 0.5 * (m_ + m_.adjoint());
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(sym, Eigen::EigenvaluesOnly).eigenvalues();
}

Eigen::Matrix2cd TwoQubitDensityMatrix::reduced_a() const {
    Eigen::Matrix2cd out;
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) out(a, ap) = m_(2 * a, 2 * ap) + m_(2 * a + 1, 2 * ap + 1);
    return out;
}

Eigen::Matrix2cd TwoQubitDensityMatrix::reduced_b() const {
    Eigen::Matrix2cd out;
    for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp) out(b, bp) = m_(b, bp) + m_(2 + b, 2 + bp);
    return out;
}

TwoQubitDensityMatrix x_state_density(const XStateParams& c) {
    if (auto report = validate_physicality(c); !report) {
        throw ParameterError("x state rejected: " + report.describe());
    }
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(kEE, kEE) = m(kGG, kGG) = (1.0 + c.c3) / 4.0;
    m(kEG, kEG) = m(kGE, kGE) = (1.0 - c.c3) / 4.0;
    m(kEE, kGG) = m(kGG, kEE) = (c.c1 - c.c2) / 4.0;
    m(kEG, kGE) = m(kGE, kEG) = (c.c1 + c.c2) / 4.0;
    return TwoQubitDensityMatrix(m);
}

XStateParams werner_params(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw ParameterError("werner: r must lie in [0, 1]");
    }
    return {-r, -r, -r};
}

}  // namespace cavdiscord
