#include "cavdiscord/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

#include "cavdiscord/lindblad.hpp"

namespace cavdiscord::cli {

namespace {

constexpr double kRowIdentityTol = 1e-9;
constexpr double kDefaultRk4Step = 1e-3;
constexpr double kOracleSampleInterval = 0.01;
constexpr int kTransitionSamples = 10000;

template <class Fn>
int guarded(std::ostream& log, Fn&& fn) {
    try {
        return fn();
    } catch (const ParameterError& e) {
        log << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvariantError& e) {
        log << "invariant violation: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

void check_row(const SweepRow& row) {
    const auto& t = row.triple;
    if (std::abs(t.mutual_info - (t.classical + t.discord)) > kRowIdentityTol || t.classical < 0.0 ||
        t.discord < 0.0) {
        throw InvariantError("row at tau = " + format_number(row.tau) + " breaks I = C + Q");
    }
}

std::string describe(const Scenario& s) {
    std::ostringstream os;
    os << "family=" << family_name(s.state) << " alpha=" << format_number(s.channel.alpha.real())
       << (s.channel.alpha.imag() < 0 ? "" : "+") << format_number(s.channel.alpha.imag())
       << "i kappa=" << format_number(s.channel.kappa) << " tau_max=" << format_number(s.tau_max);
    return os.str();
}

nlohmann::json triple_json(const CorrelationTriple& t) {
    return {{"mutual_info", t.mutual_info}, {"classical", t.classical}, {"discord", t.discord}};
}

// --- figure presets -------------------------------------------------------

struct CurveSpec {
    std::string name;
    InitialState state;
    ChannelParams channel;
};

struct PanelSpec {
    std::string id;  ///< "2a"
    int figure;
    char panel;
    double tau_max;
    int samples;
    std::vector<CurveSpec> curves;
    /// One parameter set drawn as three curves (I, C, Q) rather than one
    /// quantity for several parameter sets.
    bool split_quantities;
};

ChannelParams channel(double alpha, double kappa) { return {cplx(alpha, 0.0), kappa}; }

std::vector<PanelSpec> panel_presets() {
    const auto frozen = [](double c3) { return InitialState{FrozenFamily{c3}}; };
    const auto werner = [](double r) { return InitialState{WernerParams{r}}; };
    return {
        {"2a", 2, 'a', 10.0, 1001, {{"", frozen(0.6), channel(1.2, 0.05)}}, true},
        {"2b", 2, 'b', 10.0, 1001, {{"", frozen(0.6), channel(0.8, 0.05)}}, true},
        {"4a", 4, 'a', 10.0, 1001, {{"", frozen(0.6), channel(0.8, 0.05)}}, true},
        {"4b", 4, 'b', 50.0, 2501, {{"", frozen(0.6), channel(0.8, 0.05)}}, true},
        {"5a", 5, 'a', 10.0, 1001, {{"", frozen(0.7), channel(0.8, 2.0)}}, true},
        {"5b", 5, 'b', 10.0, 1001, {{"", frozen(0.6), channel(1.2, 3.0)}}, true},
        {"6a", 6, 'a', 10.0, 1001,
         {{"r0.5", werner(0.5), channel(0.5, 0.05)}, {"r0.9", werner(0.9), channel(0.5, 0.05)}}, false},
        {"6b", 6, 'b', 50.0, 2501,
         {{"r0.5", werner(0.5), channel(0.5, 0.05)}, {"r0.9", werner(0.9), channel(0.5, 0.05)}}, false},
        {"7a", 7, 'a', 10.0, 1001,
         {{"alpha0.8", werner(0.7), channel(0.8, 0.05)}, {"alpha0.5", werner(0.7), channel(0.5, 0.05)}}, false},
        {"7b", 7, 'b', 50.0, 2501,
         {{"alpha0.8", werner(0.7), channel(0.8, 0.05)}, {"alpha0.5", werner(0.7), channel(0.5, 0.05)}}, false},
        {"8a", 8, 'a', 50.0, 2501,
         {{"kappa0.1", werner(0.7), channel(0.8, 0.1)}, {"kappa1", werner(0.7), channel(0.8, 1.0)}}, false},
        {"8b", 8, 'b', 50.0, 2501,
         {{"kappa0.1", werner(0.9), channel(0.5, 0.1)}, {"kappa1", werner(0.9), channel(0.5, 1.0)}}, false},
    };
}

constexpr double kSurfaceTauMax = 10.0;
constexpr int kSurfaceSamples = 201;

std::filesystem::path panel_file(const std::filesystem::path& dir, int figure, char panel, const std::string& curve) {
    return dir / ("fig" + std::to_string(figure) + "_" + std::string(1, panel) + "_" + curve + ".csv");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
    if (!out) throw InvariantError("write failed for " + path.string());
}

void emit_panel(const PanelSpec& panel, const std::filesystem::path& dir, std::ostream& log) {
    const auto grid = linear_grid(panel.tau_max, panel.samples);
    for (const auto& curve : panel.curves) {
        const auto rows = sweep(curve.state, curve.channel, grid);
        for (const auto& row : rows) check_row(row);
        std::ostringstream csv;
        write_csv(csv, rows);
        const std::vector<std::string> names =
            panel.split_quantities ? std::vector<std::string>{"mutual_info", "classical", "discord"}
                                   : std::vector<std::string>{curve.name};
        for (const auto& name : names) {
            const auto path = panel_file(dir, panel.figure, panel.panel, name);
            write_file(path, csv.str());
            log << "wrote " << path.string() << '\n';
        }
        if (const auto* frozen = std::get_if<FrozenFamily>(&curve.state)) {
            const auto report = find_transitions(frozen->c3, curve.channel, panel.tau_max, kTransitionSamples);
            std::ostringstream markers;
            markers << "tau,tangential\n";
            for (const auto& c : report.crossings) markers << format_number(c.tau) << ',' << (c.tangential ? 1 : 0) << '\n';
            const auto path = panel_file(dir, panel.figure, panel.panel, "markers");
            write_file(path, markers.str());
            log << "wrote " << path.string() << '\n';
        }
    }
}

void emit_surface(const std::filesystem::path& dir, std::ostream& log) {
    const ChannelParams params = channel(1.0, 0.05);
    const auto grid = linear_grid(kSurfaceTauMax, kSurfaceSamples);
    std::ostringstream csv;
    csv << "c3," << kCsvHeader << '\n';
    std::vector<double> c3_values;
    for (int i = 0; i < 20; ++i) c3_values.push_back(0.05 * i);
    c3_values.push_back(0.99);
    for (double c3 : c3_values) {
        for (const auto& row : sweep(FrozenFamily{c3}, params, grid)) {
            check_row(row);
            csv << format_number(c3) << ',' << format_number(row.tau) << ',' << format_number(row.factor.real()) << ','
                << format_number(row.factor.imag()) << ',' << format_number(row.abs2) << ','
                << format_number(row.triple.mutual_info) << ',' << format_number(row.triple.classical) << ','
                << format_number(row.triple.discord) << '\n';
        }
    }
    const auto path = panel_file(dir, 3, 'a', "surface");
    write_file(path, csv.str());
    log << "wrote " << path.string() << '\n';
}

}  // namespace

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool with_numeric) {
    out << kCsvHeader << (with_numeric ? ",discord_numeric" : "") << '\n';
    for (const auto& row : rows) {
        out << format_number(row.tau) << ',' << format_number(row.factor.real()) << ','
            << format_number(row.factor.imag()) << ',' << format_number(row.abs2) << ','
            << format_number(row.triple.mutual_info) << ',' << format_number(row.triple.classical) << ','
            << format_number(row.triple.discord);
        if (with_numeric) out << ',' << (row.numeric_discord ? format_number(*row.numeric_discord) : "");
        out << '\n';
    }
}

int run_evolve(const Scenario& scenario, const std::filesystem::path& out_path, std::ostream& log,
               const EvolveOptions& options) {
    return guarded(log, [&] {
        const auto grid = linear_grid(scenario.tau_max, scenario.samples);
        SweepOptions sweep_opts;
        sweep_opts.numeric_discord = options.numeric_discord;
        sweep_opts.search = scenario.search_options();
        const auto rows = sweep(scenario.state, scenario.channel, grid, sweep_opts);
        for (const auto& row : rows) check_row(row);
        std::ostringstream csv;
        write_csv(csv, rows, options.numeric_discord);
        write_file(out_path, csv.str());
        return kExitOk;
    });
}

int run_transition(const Scenario& scenario, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        const int samples = std::max(kTransitionSamples, scenario.samples);
        const TransitionReport report = find_transitions(scenario.state, scenario.channel, scenario.tau_max, samples);

        nlohmann::json doc;
        doc["family"] = family_name(scenario.state);
        doc["window"] = {0.0, scenario.tau_max};
        doc["threshold_abs2"] = report.threshold;
        const bool werner = std::holds_alternative<WernerParams>(scenario.state);
        doc["branch_transition_possible"] = !werner && report.threshold > 0.0 && report.threshold < 1.0;
        if (werner) doc["note"] = "werner family: max(r, r|F|^2) = r, no branch transition";

        auto crossings = nlohmann::json::array();
        for (const auto& c : report.crossings) crossings.push_back({{"tau", c.tau}, {"tangential", c.tangential}});
        doc["crossings"] = crossings;
        auto intervals = nlohmann::json::array();
        for (const auto& iv : report.intervals) {
            intervals.push_back({{"begin", iv.begin}, {"end", iv.end}, {"regime", regime_name(iv.regime)}});
        }
        doc["intervals"] = intervals;
        doc["plateau_discord"] = report.plateau_value ? nlohmann::json(*report.plateau_value) : nlohmann::json();
        doc["initial"] = triple_json(closed_correlations(scenario.state, 1.0));
        if (scenario.channel.kappa > 0.0) {
            const auto st = stationary_values(scenario.state, scenario.channel);
            doc["stationary"] = {{"abs2_limit", st.abs2_limit}, {"correlations", triple_json(st.triple)}};
        } else {
            doc["stationary"] = nullptr;
        }
        out << doc.dump(2) << '\n';
        return kExitOk;
    });
}

int run_validate(const Scenario& scenario, const ValidateOptions& options, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        const XStateParams c = x_params(scenario.state);
        const auto closed = options.closed_form ? options.closed_form
                                                : [](double tau, const ChannelParams& p) { return coherence_factor(tau, p); };
        const FockTruncation fock = options.fock_dim   ? FockTruncation{*options.fock_dim}
                                    : scenario.fock_dim ? FockTruncation{*scenario.fock_dim}
                                                        : default_fock_truncation(scenario.channel);
        IntegrationOptions integ;
        integ.tau_max = scenario.tau_max;
        integ.step = options.rk4_step ? *options.rk4_step : scenario.rk4_step.value_or(kDefaultRk4Step);
        integ.sample_interval = integ.step * std::max(1.0, std::round(kOracleSampleInterval / integ.step));

        out << "scenario: " << describe(scenario) << '\n';
        const Trajectory traj = integrate(c, scenario.channel, fock, integ);

        double worst = 0.0, worst_tau = 0.0;
        int worst_row = 0, worst_col = 0;
        std::string broken;
        for (std::size_t i = 0; i < traj.tau.size(); ++i) {
            double dist = 0.0;
            Eigen::Matrix4cd diff;
            try {
                const auto analytic = reduced_state(c, closed(traj.tau[i], scenario.channel));
                dist = trace_distance(traj.states[i], analytic);
                diff = traj.states[i].matrix() - analytic.matrix();
            } catch (const InvariantError& e) {
                broken = "closed form unphysical at tau = " + format_number(traj.tau[i]) + ": " + e.what();
                worst = std::numeric_limits<double>::infinity();
                worst_tau = traj.tau[i];
                break;
            }
            if (dist > worst) {
                worst = dist;
                worst_tau = traj.tau[i];
                diff.cwiseAbs().maxCoeff(&worst_row, &worst_col);
                if (worst_row > worst_col) std::swap(worst_row, worst_col);  // diff is Hermitian
            }
        }
        const bool oracle_ok = worst < options.tol;
        out << "master-equation: fock_dim=" << fock.dim << " step=" << format_number(integ.step)
            << " samples=" << traj.tau.size() << " max_trace_drift=" << format_number(traj.max_trace_drift)
            << " max_trace_distance=" << format_number(worst) << " at tau=" << format_number(worst_tau);
        if (!broken.empty()) {
            out << " (" << broken << ")";
        } else if (!oracle_ok) {
            static constexpr const char* kLabels[4] = {"ee", "eg", "ge", "gg"};
            out << " worst_entry=|" << kLabels[worst_row] << "><" << kLabels[worst_col] << "|";
        }
        out << " -> " << (oracle_ok ? "PASS" : "FAIL") << '\n';

        const auto grid = linear_grid(scenario.tau_max, scenario.tau_max > 0.0 ? options.optimizer_points : 1);
        const SearchOptions search = scenario.search_options();
        double worst_gap = 0.0, gap_tau = 0.0;
        bool bound_violated = false;
        for (double tau : grid) {
            const CoherenceFactor factor = closed(tau, scenario.channel);
            const auto rho = reduced_state(c, factor);
            const auto numeric = discord_numeric(rho, c, factor, search);
            const double closed_q = closed_correlations(scenario.state, std::min(factor.abs2, 1.0)).discord;
            const double gap = std::abs(numeric.triple.discord - closed_q);
            bound_violated = bound_violated || numeric.bound_violated;
            if (gap > worst_gap) {
                worst_gap = gap;
                gap_tau = tau;
            }
        }
        const bool optimizer_ok = worst_gap < options.tol;
        out << "optimizer: points=" << grid.size() << " max_discord_gap=" << format_number(worst_gap)
            << " at tau=" << format_number(gap_tau) << (bound_violated ? " (eta bound exceeded)" : "") << " -> "
            << (optimizer_ok ? "PASS" : "FAIL") << '\n';

        const bool pass = oracle_ok && optimizer_ok;
        out << "result: " << (pass ? "PASS" : "FAIL") << '\n';
        return pass ? kExitOk : kExitFailure;
    });
}

int run_optimize(const Scenario& scenario, const OptimizeOptions& options, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        SearchOptions search = scenario.search_options();
        if (options.theta_points) search.theta_points = *options.theta_points;
        if (options.phi_points) search.phi_points = *options.phi_points;
        if (options.refine_iters) search.refine_iters = *options.refine_iters;
        const XStateParams c = x_params(scenario.state);

        out << "tau,F_abs2,classical_closed,classical_numeric,theta,phi,discord_closed,discord_numeric,gap\n";
        for (double tau : linear_grid(scenario.tau_max, scenario.samples)) {
            const CoherenceFactor factor = coherence_factor(tau, scenario.channel);
            const auto closed = closed_correlations(scenario.state, std::min(factor.abs2, 1.0));
            const auto numeric = discord_numeric(reduced_state(c, factor), c, factor, search);
            out << format_number(tau) << ',' << format_number(factor.abs2) << ',' << format_number(closed.classical)
                << ',' << format_number(numeric.triple.classical) << ',' << format_number(numeric.best.theta) << ','
                << format_number(numeric.best.phi) << ',' << format_number(closed.discord) << ','
                << format_number(numeric.triple.discord) << ','
                << format_number(std::abs(closed.discord - numeric.triple.discord)) << '\n';
        }
        return kExitOk;
    });
}

std::vector<std::string> figure_ids() {
    std::vector<std::string> ids;
    for (const auto& p : panel_presets()) ids.push_back(p.id);
    ids.insert(ids.begin() + 2, "3");
    for (int f = 2; f <= 8; ++f) ids.push_back(std::to_string(f));
    ids.push_back("all");
    return ids;
}

int run_figure(const std::string& id, const std::filesystem::path& outdir, std::ostream& log) {
    const auto ids = figure_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        log << "configuration error: unknown figure id '" << id << "'\n";
        return kExitConfig;
    }
    return guarded(log, [&] {
        std::error_code ec;
        std::filesystem::create_directories(outdir, ec);
        if (ec) throw ConfigError("cannot create output directory " + outdir.string());
        const bool all = id == "all";
        if (all || id == "3") emit_surface(outdir, log);
        for (const auto& panel : panel_presets()) {
            if (all || panel.id == id || std::to_string(panel.figure) == id) emit_panel(panel, outdir, log);
        }
        return kExitOk;
    });
}

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw ConfigError("grid must look like TxP, got '" + text + "'");
    try {
        std::size_t used_t = 0, used_p = 0;
        const int t = std::stoi(text.substr(0, x), &used_t);
        const int p = std::stoi(text.substr(x + 1), &used_p);
        if (used_t != x || used_p != text.size() - x - 1) throw std::invalid_argument("trailing characters");
        if (t < 8 || p < 8) throw ConfigError("grid sizes must be >= 8");
        return {t, p};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("grid must look like TxP, got '" + text + "'");
    }
}

}  // namespace cavdiscord::cli
