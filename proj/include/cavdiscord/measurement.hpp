#pragma once

#include <array>

#include "cavdiscord/coherence.hpp"
#include "cavdiscord/correlations.hpp"

namespace cavdiscord {

/// Projective measurement on qubit B in the basis
///   |t1> = cos(theta)|e> + e^{i phi} sin(theta)|g>,
///   |t2> = e^{-i phi} sin(theta)|e> - cos(theta)|g>.
/// theta in [0, pi/2] and phi in [0, 2 pi) cover every such basis.
struct ProjectorAngles {
    double theta = 0.0;
    double phi = 0.0;
};

struct ConditionalOutcome {
    double probability = 0.0;
    /// Normalized post-measurement state of qubit A; zero when probability is 0.
    Eigen::Matrix2cd state = Eigen::Matrix2cd::Zero();
};

std::array<Eigen::Vector2cd, 2> measurement_basis(ProjectorAngles angles);

std::array<ConditionalOutcome, 2> conditional_states(const TwoQubitDensityMatrix& rho, ProjectorAngles angles);

/// Bloch-vector length of a normalized qubit state.
double bloch_length(const Eigen::Matrix2cd& state);

/// Closed-form Bloch length of either conditional state for the evolved X
/// state:
///   eta^2 = c3^2 cos^2(2 theta)
///         + |F|^4/4 [2(c1^2+c2^2) + 2(c1^2-c2^2) cos(2 phi + arg F^2)] sin^2(2 theta).
double eta_value(const XStateParams& c, const CoherenceFactor& factor, ProjectorAngles angles);

/// Average post-measurement entropy sum_k p_k S(rho_A^k).
double measured_conditional_entropy(const TwoQubitDensityMatrix& rho, ProjectorAngles angles);

struct SearchOptions {
    int theta_points = 181;  ///< grid over [0, pi/2], endpoints included
    int phi_points = 360;    ///< grid over [0, 2 pi)
    int refine_iters = 40;   ///< golden-section iterations per line search
    int refine_passes = 3;   ///< alternating (phi, theta) line-search passes
};

struct SearchResult {
    double classical = 0.0;
    double conditional_entropy = 0.0;
    ProjectorAngles best;
};

/// Maximizes S(rho_A) - sum_k p_k S(rho_A^k) over measurements on B: dense
/// grid search followed by coordinate-wise golden-section refinement around
/// the best cell. Ties within 1e-14 keep the lexicographically smaller
/// (theta, phi).
SearchResult maximize_classical(const TwoQubitDensityMatrix& rho, const SearchOptions& options = {});

struct NumericDiscord {
    CorrelationTriple triple;
    ProjectorAngles best;
    double best_eta = 0.0;       ///< Bloch length of the optimal conditional state
    double branch_bound = 0.0;   ///< closed-form max(|c3|, W)
    bool bound_violated = false; ///< best_eta > branch_bound + 1e-9
};

/// Mutual information from dense entropies minus the optimized classical
/// correlation. c and factor only serve the bound check on eta; a bound
/// violation is reported on std::clog and flagged, never clamped.
NumericDiscord discord_numeric(const TwoQubitDensityMatrix& rho, const XStateParams& c,
                               const CoherenceFactor& factor, const SearchOptions& options = {});

}  // namespace cavdiscord
