#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cavdiscord {

using cplx = std::complex<double>;

/// Rejected physical parameters (non-positive X state, r outside [0,1], ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computed quantity broke one of its stated invariants.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two-qubit basis ordering used by every matrix in the library:
/// index 0 = |ee>, 1 = |eg>, 2 = |ge>, 3 = |gg>, first label is qubit A.
/// Single-qubit ordering is 0 = |e>, 1 = |g>.
enum BasisIndex : int { kEE = 0, kEG = 1, kGE = 2, kGG = 3 };

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

/// Bell-diagonal correlation coefficients: rho = (I + sum_i c_i s_i (x) s_i) / 4.
struct XStateParams {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    friend bool operator==(const XStateParams&, const XStateParams&) = default;
};

/// Werner mixture (1 - r) I/4 + r |singlet><singlet|.
struct WernerParams {
    double r = 0.0;
};

/// Dimensionless cavity configuration. Time is supplied per call as the
/// scaled time tau = Omega t, so kappa = k / Omega.
struct ChannelParams {
    cplx alpha{0.0, 0.0};
    double kappa = 0.0;

    double mean_photons() const { return std::norm(alpha); }
    void validate() const;
};

struct PhysicalityReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    explicit operator bool() const { return ok(); }
    std::string describe() const;
};

/// Eigenvalues of the Bell-diagonal state in the fixed order
/// (1-c1-c2-c3)/4, (1-c1+c2+c3)/4, (1+c1-c2+c3)/4, (1+c1+c2-c3)/4.
std::array<double, 4> bell_eigenvalues(const XStateParams& c);

PhysicalityReport validate_physicality(const XStateParams& c);

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix. Construction
/// checks the invariants (within kHermitianTol / kTraceTol / kPositivityTol)
/// and throws InvariantError otherwise.
class TwoQubitDensityMatrix {
public:
    explicit TwoQubitDensityMatrix(const Eigen::Matrix4cd& m);

    const Eigen::Matrix4cd& matrix() const { return m_; }
    cplx operator()(int row, int col) const { return m_(row, col); }

    /// Ascending eigenvalues.
    Eigen::Vector4d eigenvalues() const;

    Eigen::Matrix2cd reduced_a() const;
    Eigen::Matrix2cd reduced_b() const;

private:
    Eigen::Matrix4cd m_;
};

/// Diagnostic for a candidate density matrix; empty string means physical.
std::string density_matrix_defect(const Eigen::Matrix4cd& m, double positivity_tol = kPositivityTol);

TwoQubitDensityMatrix x_state_density(const XStateParams& c);

XStateParams werner_params(double r);
inline XStateParams werner_params(WernerParams w) { return werner_params(w.r); }

}  // namespace cavdiscord
