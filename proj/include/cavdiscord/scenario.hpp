#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "cavdiscord/analysis.hpp"

namespace cavdiscord {

/// Malformed scenario file or command-line value.
class ConfigError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// One run configuration. JSON form is a flat object:
///   family     "frozen" (needs c3) | "werner" (needs r) | "general" (needs c1, c2, c3)
///   alpha_re   real part of the coherent amplitude
///   alpha_im   imaginary part, optional (default 0)
///   kappa      k / Omega
///   tau_max    end of the scaled-time window
///   samples    number of tau points, >= 1
///   fock_dim, rk4_step, grid_theta, grid_phi, refine   optional overrides
/// Unknown keys are rejected.
struct Scenario {
    InitialState state = FrozenFamily{0.6};
    ChannelParams channel;
    double tau_max = 10.0;
    int samples = 1001;
    std::optional<int> fock_dim;
    std::optional<double> rk4_step;
    std::optional<int> grid_theta;
    std::optional<int> grid_phi;
    std::optional<int> refine;

    SearchOptions search_options() const;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace cavdiscord
