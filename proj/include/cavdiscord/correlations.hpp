#pragma once

#include <span>

#include "cavdiscord/statespace.hpp"

namespace cavdiscord {

/// Quantum mutual information, classical correlation (measurement on B) and
/// discord, all in bits. mutual_info == classical + discord holds exactly.
struct CorrelationTriple {
    double mutual_info = 0.0;
    double classical = 0.0;
    double discord = 0.0;
};

/// Shannon entropy of {p, 1-p} in bits, with 0 log 0 = 0.
double binary_entropy(double p);

/// Entropy of a qubit state with eigenvalues (1 +/- eta)/2.
double conditional_entropy(double eta);

/// -sum x log2 x over a spectrum; eigenvalues in [-kPositivityTol, 0) count as 0.
double shannon_entropy_bits(std::span<const double> probabilities);

double von_neumann_entropy(const TwoQubitDensityMatrix& rho);
double von_neumann_entropy(const Eigen::Matrix2cd& rho);

/// 2 + sum_i lambda_i log2 lambda_i for the evolved X state with |F|^2 = abs2.
double mutual_information(const XStateParams& c, double abs2);

/// Radical form |F|^2/2 sqrt(2(c1^2+c2^2) + 2|c1^2-c2^2|), which reduces to
/// abs2 * max(|c1|, |c2|).
double w_factor(const XStateParams& c, double abs2);

/// m = max(|c3|, W): the Bloch length reached by the optimal measurement.
double measurement_branch(const XStateParams& c, double abs2);

/// sum_{j=1,2} (1 + (-1)^j m)/2 log2(1 + (-1)^j m).
double classical_from_branch(double m);

double classical_correlation_closed(const XStateParams& c, double abs2);

CorrelationTriple discord_closed(const XStateParams& c, double abs2);

/// c = (1, -c3, c3), |c3| < 1.
CorrelationTriple frozen_family_correlations(double c3, double abs2);

/// c = (-r, -r, -r). The classical part does not depend on abs2 because
/// max(r, r |F|^2) = r.
CorrelationTriple werner_correlations(double r, double abs2);

/// Builds a triple from (I, C) with the rounding clamp applied: values in
/// [-1e-10, 0) become 0; anything more negative throws InvariantError.
CorrelationTriple make_triple(double mutual_info, double classical);

}  // namespace cavdiscord
