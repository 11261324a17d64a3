#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cavdiscord/scenario.hpp"

namespace cavdiscord::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< validation or invariant failure
inline constexpr int kExitConfig = 2;   ///< configuration error

inline constexpr const char* kCsvHeader = "tau,F_re,F_im,F_abs2,mutual_info,classical,discord";

/// 12 significant digits, "%.12g"; negative zero prints as 0.
std::string format_number(double v);

/// Writes the trajectory table; LF line endings, header first.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool with_numeric = false);

struct EvolveOptions {
    bool numeric_discord = false;
};

int run_evolve(const Scenario& scenario, const std::filesystem::path& out_path, std::ostream& log,
               const EvolveOptions& options = {});

/// JSON report on `out`: crossings, regime intervals, plateau and stationary values.
int run_transition(const Scenario& scenario, std::ostream& out, std::ostream& log);

struct ValidateOptions {
    std::optional<int> fock_dim;
    std::optional<double> rk4_step;
    double tol = 1e-6;
    int optimizer_points = 20;
    /// Closed-form coherence factor under test; defaults to coherence_factor.
    std::function<CoherenceFactor(double tau, const ChannelParams&)> closed_form;
};

/// Cross-checks the closed forms against the master-equation integrator and
/// the measurement optimizer. Exit 0 iff both stay within tol.
int run_validate(const Scenario& scenario, const ValidateOptions& options, std::ostream& out, std::ostream& log);

struct OptimizeOptions {
    std::optional<int> theta_points;
    std::optional<int> phi_points;
    std::optional<int> refine_iters;
};

/// Per-tau table comparing numerically optimized and closed-form classical
/// correlation and discord.
int run_optimize(const Scenario& scenario, const OptimizeOptions& options, std::ostream& out, std::ostream& log);

/// Figure ids understood by run_figure: single panels ("2a", "3", ...),
/// whole figures ("2" .. "8") and "all".
std::vector<std::string> figure_ids();

/// Writes fig<N>_<panel>_<curve>.csv files into outdir with the preset
/// parameters of the requested figure.
int run_figure(const std::string& id, const std::filesystem::path& outdir, std::ostream& log);

/// Parses "TxP" (e.g. "181x360").
std::pair<int, int> parse_grid(const std::string& text);

}  // namespace cavdiscord::cli
