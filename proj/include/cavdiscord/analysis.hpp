#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cavdiscord/coherence.hpp"
#include "cavdiscord/correlations.hpp"
#include "cavdiscord/measurement.hpp"

namespace cavdiscord {

/// c = (1, -c3, c3): the family with a frozen-discord window.
struct FrozenFamily {
    double c3 = 0.0;
};

using InitialState = std::variant<XStateParams, FrozenFamily, WernerParams>;

XStateParams x_params(const InitialState& state);
std::string family_name(const InitialState& state);

/// Closed-form correlations through the family-specific expression.
CorrelationTriple closed_correlations(const InitialState& state, double abs2);

enum class Regime {
    kDiscordFrozen,    ///< |F|^2 at or above the branch threshold: discord constant
    kClassicalFrozen,  ///< below the threshold: classical correlation constant
};

const char* regime_name(Regime regime);

struct Crossing {
    double tau = 0.0;
    bool tangential = false;  ///< |F|^2 grazes the threshold (extremum within 1e-9 of it)
};

struct RegimeInterval {
    double begin = 0.0;
    double end = 0.0;
    Regime regime = Regime::kDiscordFrozen;
};

struct TransitionReport {
    double threshold = 0.0;  ///< value of |F|^2 where the optimal measurement switches branch
    std::vector<Crossing> crossings;
    std::vector<RegimeInterval> intervals;
    std::optional<double> plateau_value;  ///< frozen discord, frozen family only
};

struct StationaryReport {
    double abs2_limit = 0.0;
    CorrelationTriple triple;
};

/// Every tau in [0, tau_max] where |F(tau)|^2 crosses `level`. Sign changes on
/// a uniform grid of `samples` points are bisected to below 1e-9; grid-level
/// extrema that approach the level are refined to catch tangential touches
/// and crossing pairs hidden inside one cell.
TransitionReport find_level_crossings(double level, const ChannelParams& params, double tau_max, int samples);

/// Branch switches of m = max(|c3|, |F|^2) for the frozen family.
TransitionReport find_transitions(double c3, const ChannelParams& params, double tau_max, int samples = 10000);

/// Branch switches for any X state (threshold |c3| / max(|c1|, |c2|)). Werner
/// states and states with max(|c1|, |c2|) <= |c3| yield no crossings.
TransitionReport find_transitions(const InitialState& state, const ChannelParams& params, double tau_max,
                                  int samples = 10000);

/// tau -> infinity values. Throws ParameterError for kappa = 0.
StationaryReport stationary_values(const InitialState& state, const ChannelParams& params);

struct SweepRow {
    double tau = 0.0;
    cplx factor{1.0, 0.0};
    double abs2 = 1.0;
    CorrelationTriple triple;
    std::optional<double> numeric_discord;
};

struct SweepOptions {
    bool numeric_discord = false;
    SearchOptions search;
};

/// samples points evenly spaced on [0, tau_max]; samples == 1 gives {0}.
std::vector<double> linear_grid(double tau_max, int samples);

std::vector<SweepRow> sweep(const InitialState& state, const ChannelParams& params, std::span<const double> tau_grid,
                            const SweepOptions& options = {});

}  // namespace cavdiscord
