#include "cavdiscord/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace cavdiscord {

namespace {

constexpr double kBisectionWidth = 1e-10;
constexpr double kTouchTol = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double bisect(const auto& g, double lo, double hi) {
    double glo = g(lo);
    while (hi - lo > kBisectionWidth) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm >= 0.0) == (glo >= 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Minimizes fn on [lo, hi] by golden section; returns the argmin.
double golden_argmin(const auto& fn, double lo, double hi, int iters = 80) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = fn(x1), f2 = fn(x2);
    for (int i = 0; i < iters && hi - lo > 1e-13; ++i) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = fn(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = fn(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

double frozen_plateau(double c3) { return frozen_family_correlations(c3, 1.0).discord; }

}  // namespace

XStateParams x_params(const InitialState& state) {
    return std::visit(overloaded{[](const XStateParams& c) { return c; },
                                 [](const FrozenFamily& f) { return XStateParams{1.0, -f.c3, f.c3}; },
                                 [](const WernerParams& w) { return werner_params(w.r); }},
                      state);
}

std::string family_name(const InitialState& state) {
    return std::visit(overloaded{[](const XStateParams&) { return "general"; },
                                 [](const FrozenFamily&) { return "frozen"; },
                                 [](const WernerParams&) { return "werner"; }},
                      state);
}

CorrelationTriple closed_correlations(const InitialState& state, double abs2) {
    return std::visit(overloaded{[&](const XStateParams& c) { return discord_closed(c, abs2); },
                                 [&](const FrozenFamily& f) { return frozen_family_correlations(f.c3, abs2); },
                                 [&](const WernerParams& w) { return werner_correlations(w.r, abs2); }},
                      state);
}

const char* regime_name(Regime regime) {
    return regime == Regime::kDiscordFrozen ? "discord-frozen" : "classical-frozen";
}

TransitionReport find_level_crossings(double level, const ChannelParams& params, double tau_max, int samples) {
    params.validate();
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw ParameterError("transition window must have tau_max > 0");
    if (samples < 3) throw ParameterError("transition search needs at least 3 samples");

    auto g = [&](double tau) { return coherence_factor(tau, params).abs2 - level; };
    const double dt = tau_max / (samples - 1);
    std::vector<double> tau(samples), val(samples);
    for (int i = 0; i < samples; ++i) {
        tau[i] = i == samples - 1 ? tau_max : i * dt;
        val[i] = g(tau[i]);
    }
    auto above = [](double v) { return v >= 0.0; };

    TransitionReport report;
    report.threshold = level;
    for (int i = 0; i + 1 < samples; ++i) {
        if (above(val[i]) != above(val[i + 1])) {
            report.crossings.push_back({bisect(g, tau[i], tau[i + 1]), false});
        }
    }
    for (int i = 1; i + 1 < samples; ++i) {
        if (above(val[i - 1]) != above(val[i]) || above(val[i]) != above(val[i + 1])) continue;
        const double s = above(val[i]) ? 1.0 : -1.0;
        const bool toward_level = s * val[i] <= s * val[i - 1] && s * val[i] <= s * val[i + 1];
        if (!toward_level) continue;
        const double t_ext = golden_argmin([&](double t) { return s * g(t); }, tau[i - 1], tau[i + 1]);
        const double g_ext = g(t_ext);
        if (std::abs(g_ext) <= kTouchTol) {
            report.crossings.push_back({t_ext, true});
        } else if (above(g_ext) != above(val[i])) {
            report.crossings.push_back({bisect(g, tau[i - 1], t_ext), false});
            report.crossings.push_back({bisect(g, t_ext, tau[i + 1]), false});
        }
    }
    std::sort(report.crossings.begin(), report.crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.tau < b.tau; });
    // A hidden pair can be found from two neighbouring extremum cells.
    report.crossings.erase(std::unique(report.crossings.begin(), report.crossings.end(),
                                       [](const Crossing& a, const Crossing& b) { return b.tau - a.tau < 1e-8; }),
                           report.crossings.end());

    std::vector<double> edges{0.0};
    for (const auto& c : report.crossings) edges.push_back(c.tau);
    edges.push_back(tau_max);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        if (edges[k + 1] <= edges[k]) continue;
        const double mid = 0.5 * (edges[k] + edges[k + 1]);
        report.intervals.push_back(
            {edges[k], edges[k + 1], above(g(mid)) ? Regime::kDiscordFrozen : Regime::kClassicalFrozen});
    }
    return report;
}

TransitionReport find_transitions(double c3, const ChannelParams& params, double tau_max, int samples) {
    if (!(std::abs(c3) > 0.0 && std::abs(c3) < 1.0)) throw ParameterError("transition search needs 0 < |c3| < 1");
    TransitionReport report = find_level_crossings(std::abs(c3), params, tau_max, samples);
    report.plateau_value = frozen_plateau(c3);
    return report;
}

TransitionReport find_transitions(const InitialState& state, const ChannelParams& params, double tau_max,
                                  int samples) {
    if (const auto* frozen = std::get_if<FrozenFamily>(&state)) {
        return find_transitions(frozen->c3, params, tau_max, samples);
    }
    const XStateParams c = x_params(state);
    if (auto report = validate_physicality(c); !report) throw ParameterError("x state rejected: " + report.describe());
    const double transverse = std::max(std::abs(c.c1), std::abs(c.c2));
    const double level = transverse > 0.0 ? std::abs(c.c3) / transverse : 2.0;
    if (std::holds_alternative<WernerParams>(state) || level >= 1.0 || level <= 0.0) {
        // No switch possible: m stays on one branch for all |F|^2 in [0, 1].
        params.validate();
        TransitionReport report;
        report.threshold = level;
        report.intervals.push_back({0.0, tau_max, level <= 0.0 ? Regime::kDiscordFrozen : Regime::kClassicalFrozen});
        return report;
    }
    return find_level_crossings(level, params, tau_max, samples);
}

StationaryReport stationary_values(const InitialState& state, const ChannelParams& params) {
    StationaryReport report;
    report.abs2_limit = asymptotic_abs2(params);
    report.triple = closed_correlations(state, report.abs2_limit);
    return report;
}

std::vector<double> linear_grid(double tau_max, int samples) {
    if (samples < 1) throw ParameterError("grid needs at least one sample");
    if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) throw ParameterError("tau_max must be finite and >= 0");
    if (samples == 1) return {0.0};
    std::vector<double> grid(samples);
    for (int i = 0; i < samples; ++i) grid[i] = tau_max * i / (samples - 1);
    grid.back() = tau_max;
    return grid;
}

std::vector<SweepRow> sweep(const InitialState& state, const ChannelParams& params, std::span<const double> tau_grid,
                            const SweepOptions& options) {
    params.validate();
    const XStateParams c = x_params(state);
    if (auto report = validate_physicality(c); !report) throw ParameterError("x state rejected: " + report.describe());

    std::vector<SweepRow> rows;
    rows.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        const CoherenceFactor factor = coherence_factor(tau, params);
        SweepRow row;
        row.tau = tau;
        row.factor = factor.value;
        row.abs2 = factor.abs2;
        row.triple = closed_correlations(state, std::min(factor.abs2, 1.0));
        if (options.numeric_discord) {
            row.numeric_discord = discord_numeric(reduced_state(c, factor), c, factor, options.search).triple.discord;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cavdiscord
