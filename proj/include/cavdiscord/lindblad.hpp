#pragma once

#include <vector>

#include "cavdiscord/statespace.hpp"

namespace cavdiscord {

/// Integration could not be trusted at the requested step size.
class StepSizeError : public InvariantError {
public:
    using InvariantError::InvariantError;
};

enum class AtomLevel { kExcited = 0, kGround = 1 };

/// Photon levels 0 .. dim-1 kept for each cavity.
struct FockTruncation {
    int dim = 20;
};

/// Population of a coherent state |alpha> outside the first `dim` levels.
double coherent_tail(double mean_photons, int dim);

/// Smallest dimension (at least 20) whose coherent tail is below 1e-12.
FockTruncation default_fock_truncation(const ChannelParams& params);

/// Conditional cavity operators X_{ab} = <a| rho |b> for one atom-cavity pair,
/// a, b in {e, g}. X_ge is X_eg^dagger and is not stored. Both cavities share
/// alpha and kappa, so one set of blocks describes either of them.
struct CavityBlocks {
    Eigen::MatrixXcd ee;
    Eigen::MatrixXcd eg;
    Eigen::MatrixXcd gg;

    cplx trace(AtomLevel left, AtomLevel right) const;
};

/// Per-block generator in scaled time (tau = Omega t, kappa = k / Omega):
///   dX_ab/dtau = -i (H_a X - X H_b) + kappa (2 a X a^dag - a^dag a X - X a^dag a)
/// with H_e = a^dag a + 1 and H_g = -a^dag a.
class CavityBlockModel {
public:
    CavityBlockModel(const ChannelParams& params, FockTruncation truncation);

    int dim() const { return dim_; }
    const ChannelParams& params() const { return params_; }

    /// Dense annihilation operator on the truncated space.
    Eigen::MatrixXcd annihilation() const;
    /// Diagonal of H_e or H_g.
    const Eigen::VectorXd& energies(AtomLevel level) const;

    Eigen::MatrixXcd derivative(AtomLevel left, AtomLevel right, const Eigen::MatrixXcd& x) const;

    /// Truncated |alpha><alpha|, renormalized to unit trace, in every block.
    CavityBlocks initial_blocks() const;

    /// Largest |eigenvalue| of any block generator; bounds the RK4 step.
    double spectral_radius_bound() const;

private:
    ChannelParams params_;
    int dim_;
    Eigen::VectorXd energy_e_;
    Eigen::VectorXd energy_g_;
    Eigen::VectorXd ladder_;  ///< sqrt(n), n = 1 .. dim-1
};

CavityBlockModel build_superoperator_blocks(const ChannelParams& params, FockTruncation truncation);

struct IntegrationOptions {
    double tau_max = 10.0;
    double step = 1e-3;
    double sample_interval = 0.01;
};

struct Trajectory {
    std::vector<double> tau;
    std::vector<TwoQubitDensityMatrix> states;
    double max_trace_drift = 0.0;
};

/// Integrates the blocks with fixed-step RK4 and, at each sample, rebuilds the
/// two-atom reduced state as rho_{ab,a'b'}(tau) = rho_{ab,a'b'}(0) Tr X_{aa'} Tr X_{bb'}.
/// Throws StepSizeError when the step exceeds the RK4 stability bound or the
/// trace of a diagonal block drifts by more than 1e-8.
Trajectory integrate(const XStateParams& c, const ChannelParams& params, FockTruncation truncation,
                     const IntegrationOptions& options = {});

/// Half the sum of singular values of a - b.
double trace_distance(const TwoQubitDensityMatrix& a, const TwoQubitDensityMatrix& b);

}  // namespace cavdiscord
