#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cavdiscord/cli.hpp"

namespace cl = cavdiscord::cli;

namespace {

template <class Fn>
int with_scenario(const std::string& path, Fn&& fn) {
    try {
        return fn(cavdiscord::load_scenario(path));
    } catch (const cavdiscord::ParameterError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return cl::kExitConfig;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlation dynamics of two qubits in independent dissipative cavities"};
    app.require_subcommand(1);

    std::string config, out_path, outdir, figure_id, grid;
    bool numeric = false;
    cl::ValidateOptions validate_opts;
    cl::OptimizeOptions optimize_opts;
    int refine = -1;

    auto* evolve = app.add_subcommand("evolve", "Write the I/C/Q trajectory of a scenario as CSV");
    evolve->add_option("--config", config, "Scenario JSON file")->required();
    evolve->add_option("--out", out_path, "Output CSV path")->required();
    evolve->add_flag("--numeric", numeric, "Append an optimizer-based discord column");

    auto* transition = app.add_subcommand("transition", "Report branch-switch times and stationary values");
    transition->add_option("--config", config, "Scenario JSON file")->required();

    auto* validate = app.add_subcommand("validate", "Cross-check closed forms against the oracles");
    validate->add_option("--config", config, "Scenario JSON file")->required();
    validate->add_option("--fock-dim", validate_opts.fock_dim, "Photon levels kept per cavity");
    validate->add_option("--rk4-step", validate_opts.rk4_step, "RK4 step in scaled time");
    validate->add_option("--tol", validate_opts.tol, "Pass threshold")->capture_default_str();

    auto* optimize = app.add_subcommand("optimize", "Numerically optimize the measurement along the trajectory");
    optimize->add_option("--config", config, "Scenario JSON file")->required();
    optimize->add_option("--grid", grid, "Angle grid TxP, e.g. 181x360");
    optimize->add_option("--refine", refine, "Golden-section iterations per line search");

    auto* figure = app.add_subcommand("figure", "Emit the CSV tables behind a figure");
    figure->add_option("--id", figure_id, "Figure id (2a, 3, 8b, 6, all, ...)")->required();
    figure->add_option("--outdir", outdir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cl::kExitConfig;
    }

    if (*evolve) {
        return with_scenario(config, [&](const auto& s) {
            return cl::run_evolve(s, out_path, std::cerr, cl::EvolveOptions{numeric});
        });
    }
    if (*transition) {
        return with_scenario(config, [&](const auto& s) { return cl::run_transition(s, std::cout, std::cerr); });
    }
    if (*validate) {
        return with_scenario(config, [&](const auto& s) { return cl::run_validate(s, validate_opts, std::cout, std::cerr); });
    }
    if (*optimize) {
        return with_scenario(config, [&](const auto& s) {
            if (!grid.empty()) {
                const auto [t, p] = cl::parse_grid(grid);
                optimize_opts.theta_points = t;
                optimize_opts.phi_points = p;
            }
            if (refine >= 0) optimize_opts.refine_iters = refine;
            return cl::run_optimize(s, optimize_opts, std::cout, std::cerr);
        });
    }
    return cl::run_figure(figure_id, outdir, std::cerr);
}
