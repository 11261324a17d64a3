#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cavdiscord/cli.hpp"
#include "oracles.hpp"

using namespace cavdiscord;
namespace cl = cavdiscord::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = CAVDISCORD_SCENARIO_DIR;

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("cavdiscord_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json base_doc() {
    return {{"family", "frozen"}, {"c3", 0.6}, {"alpha_re", 0.8}, {"kappa", 0.05}, {"tau_max", 10.0}, {"samples", 101}};
}

}  // namespace

TEST_CASE("parse_scenario") {
    SUBCASE("valid frozen scenario") {
        const auto s = parse_scenario(base_doc());
        CHECK(std::get<FrozenFamily>(s.state).c3 == 0.6);
        CHECK(s.channel.alpha == cplx(0.8, 0.0));
        CHECK(s.samples == 101);
        CHECK_FALSE(s.fock_dim.has_value());
    }
    SUBCASE("complex alpha and general family") {
        const auto s = load_scenario(kScenarios / "general_complex_alpha.json");
        CHECK(s.channel.alpha == cplx(0.6, 0.5));
        CHECK(std::get<XStateParams>(s.state) == XStateParams{0.5, -0.3, 0.2});
    }
    SUBCASE("rejections") {
        auto doc = base_doc();
        doc["kapa"] = 0.1;
        CHECK_THROWS_AS(parse_scenario(doc), ConfigError);
        doc = base_doc();
        doc.erase("kappa");
        CHECK_THROWS_AS(parse_scenario(doc), ConfigError);
        doc = base_doc();
        doc["r"] = 0.5;
        CHECK_THROWS_AS(parse_scenario(doc), ConfigError);
        doc = base_doc();
        doc["family"] = "thermal";
        CHECK_THROWS_AS(parse_scenario(doc), ConfigError);
        doc = base_doc();
        doc["samples"] = 0;
        CHECK_THROWS_AS(parse_scenario(doc), ParameterError);
        doc = base_doc();
        doc["kappa"] = "fast";
        CHECK_THROWS_AS(parse_scenario(doc), ConfigError);
        doc = {{"family", "general"}, {"c1", 1}, {"c2", 1}, {"c3", 1}, {"alpha_re", 0.5},
               {"kappa", 0.1}, {"tau_max", 1}, {"samples", 3}};
        CHECK_THROWS_AS(parse_scenario(doc), ParameterError);
        CHECK_THROWS_AS(load_scenario(kScenarios / "invalid_unknown_key.json"), ConfigError);
        CHECK_THROWS_AS(load_scenario(kScenarios / "does_not_exist.json"), ConfigError);
    }
}

TEST_CASE("format_number") {
    CHECK(cl::format_number(0.0) == "0");
    CHECK(cl::format_number(-0.0) == "0");
    CHECK(cl::format_number(0.278071905112637) == "0.278071905113");
    CHECK(cl::format_number(1e-20) == "1e-20");
}

TEST_CASE("evolve writes a deterministic CSV") {
    const auto dir = scratch_dir("evolve");
    const auto s = load_scenario(kScenarios / "fig2a.json");
    std::ostringstream log;
    REQUIRE(cl::run_evolve(s, dir / "a.csv", log) == cl::kExitOk);
    REQUIRE(cl::run_evolve(s, dir / "b.csv", log) == cl::kExitOk);
    const auto text = slurp(dir / "a.csv");
    CHECK(text == slurp(dir / "b.csv"));
    CHECK(text.find('\r') == std::string::npos);

    std::string header;
    const auto rows = parse_csv(text, &header);
    CHECK(header == cl::kCsvHeader);
    REQUIRE(rows.size() == 1001);
    CHECK(rows[0][0] == 0.0);
    CHECK(rows[0][3] == 1.0);
    CHECK(rows[0][6] == doctest::Approx(oracle::frozen::kOneMinusH08).epsilon(1e-11));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) CHECK(rows[i][0] > rows[i - 1][0]);
        CHECK(std::abs(rows[i][4] - rows[i][5] - rows[i][6]) < 1e-9);
    }
    // golden values of the first data row after tau = 0
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "0,1,0,1,1.27807190511,1,0.278071905113");
}

TEST_CASE("evolve with one sample and with the numeric column") {
    const auto dir = scratch_dir("evolve1");
    auto doc = base_doc();
    doc["samples"] = 1;
    std::ostringstream log;
    REQUIRE(cl::run_evolve(parse_scenario(doc), dir / "one.csv", log) == cl::kExitOk);
    const auto rows = parse_csv(slurp(dir / "one.csv"));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == 0.0);
    CHECK(rows[0][3] == 1.0);

    doc["samples"] = 5;
    doc["grid_theta"] = 46;
    doc["grid_phi"] = 90;
    REQUIRE(cl::run_evolve(parse_scenario(doc), dir / "num.csv", log, {true}) == cl::kExitOk);
    std::string header;
    const auto num = parse_csv(slurp(dir / "num.csv"), &header);
    CHECK(header == std::string(cl::kCsvHeader) + ",discord_numeric");
    for (const auto& r : num) CHECK(std::abs(r[7] - r[6]) < 1e-6);
}

TEST_CASE("Werner evolve keeps the classical column constant") {
    const auto dir = scratch_dir("werner");
    std::ostringstream log;
    REQUIRE(cl::run_evolve(load_scenario(kScenarios / "fig6_r0.9.json"), dir / "w.csv", log) == cl::kExitOk);
    const auto rows = parse_csv(slurp(dir / "w.csv"));
    for (const auto& r : rows) CHECK(r[5] == rows[0][5]);
}

TEST_CASE("evolve to an unwritable path is a configuration error") {
    std::ostringstream log;
    CHECK(cl::run_evolve(parse_scenario(base_doc()), "/nonexistent_dir/x.csv", log) == cl::kExitConfig);
}

TEST_CASE("transition report") {
    std::ostringstream out, log;
    SUBCASE("no crossings for the strong-damping scenario") {
        REQUIRE(cl::run_transition(load_scenario(kScenarios / "fig5b.json"), out, log) == cl::kExitOk);
        const auto doc = nlohmann::json::parse(out.str());
        CHECK(doc["crossings"].empty());
        CHECK(doc["intervals"].size() == 1);
        CHECK(doc["intervals"][0]["regime"] == "discord-frozen");
    }
    SUBCASE("c3 = 0.99 crosses before 0.1") {
        auto d = base_doc();
        d["c3"] = 0.99;
        d["alpha_re"] = 1.0;
        REQUIRE(cl::run_transition(parse_scenario(d), out, log) == cl::kExitOk);
        const auto doc = nlohmann::json::parse(out.str());
        CHECK(doc["crossings"][0]["tau"].get<double>() < 0.1);
        CHECK(doc["branch_transition_possible"] == true);
    }
    SUBCASE("Werner states say there is no transition") {
        REQUIRE(cl::run_transition(load_scenario(kScenarios / "fig6_r0.9.json"), out, log) == cl::kExitOk);
        const auto doc = nlohmann::json::parse(out.str());
        CHECK(doc["branch_transition_possible"] == false);
        CHECK(doc.contains("note"));
        CHECK(doc["plateau_discord"].is_null());
    }
    SUBCASE("stationary block") {
        REQUIRE(cl::run_transition(parse_scenario(base_doc()), out, log) == cl::kExitOk);
        const auto doc = nlohmann::json::parse(out.str());
        CHECK(doc["stationary"]["correlations"]["discord"].get<double>() ==
              doctest::Approx(oracle::frozen::kQInf_a08_k005_c06).epsilon(1e-12));
        CHECK(doc["plateau_discord"].get<double>() == doctest::Approx(oracle::frozen::kOneMinusH08).epsilon(1e-13));
    }
}

TEST_CASE("validate") {
    std::ostringstream out, log;
    SUBCASE("acceptance scenario passes") {
        auto doc = base_doc();
        doc["fock_dim"] = 30;
        const int code = cl::run_validate(parse_scenario(doc), {}, out, log);
        CHECK(code == cl::kExitOk);
        CHECK(out.str().find("result: PASS") != std::string::npos);
    }
    SUBCASE("alpha = 0 passes") {
        auto doc = base_doc();
        doc["alpha_re"] = 0.0;
        doc["tau_max"] = 3.0;
        CHECK(cl::run_validate(parse_scenario(doc), {}, out, log) == cl::kExitOk);
    }
    SUBCASE("a corrupted closed form is caught and localized") {
        auto doc = base_doc();
        doc["tau_max"] = 3.0;
        cl::ValidateOptions opts;
        opts.optimizer_points = 4;
        opts.closed_form = [](double tau, const ChannelParams& p) {
            // phase of f flipped: f -> conj(f)
            return CoherenceFactor::from_value(std::conj(f_factor(tau, p)) * chi_overlap(tau, p));
        };
        const int code = cl::run_validate(parse_scenario(doc), opts, out, log);
        CHECK(code == cl::kExitFailure);
        CHECK(out.str().find("master-equation:") != std::string::npos);
        CHECK(out.str().find("worst_entry=|ee><gg|") != std::string::npos);
        CHECK(out.str().find("result: FAIL") != std::string::npos);
    }
    SUBCASE("step beyond the stability bound") {
        cl::ValidateOptions opts;
        opts.rk4_step = 0.5;
        CHECK(cl::run_validate(parse_scenario(base_doc()), opts, out, log) == cl::kExitFailure);
        CHECK(log.str().find("invariant violation") != std::string::npos);
    }
    SUBCASE("fock dimension too small") {
        cl::ValidateOptions opts;
        opts.fock_dim = 5;
        CHECK(cl::run_validate(parse_scenario(base_doc()), opts, out, log) == cl::kExitConfig);
    }
}

TEST_CASE("optimize") {
    auto doc = base_doc();
    doc["samples"] = 6;
    std::ostringstream out, log;
    cl::OptimizeOptions opts;
    opts.theta_points = 91;
    opts.phi_points = 180;
    REQUIRE(cl::run_optimize(parse_scenario(doc), opts, out, log) == cl::kExitOk);
    std::string header;
    const auto rows = parse_csv(out.str(), &header);
    CHECK(header == "tau,F_abs2,classical_closed,classical_numeric,theta,phi,discord_closed,discord_numeric,gap");
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) CHECK(r[8] < 1e-6);

    CHECK(cl::parse_grid("181x360") == std::pair{181, 360});
    CHECK_THROWS_AS(cl::parse_grid("181"), ConfigError);
    CHECK_THROWS_AS(cl::parse_grid("4x4"), ConfigError);
    CHECK_THROWS_AS(cl::parse_grid("ax9"), ConfigError);
}

TEST_CASE("figure output") {
    const auto dir = scratch_dir("figs");
    std::ostringstream log;
    SUBCASE("2a: three curves plus markers") {
        REQUIRE(cl::run_figure("2a", dir, log) == cl::kExitOk);
        for (const char* curve : {"mutual_info", "classical", "discord"}) {
            std::string header;
            const auto rows = parse_csv(slurp(dir / (std::string("fig2_a_") + curve + ".csv")), &header);
            CHECK(header == cl::kCsvHeader);
            CHECK(rows.size() == 1001);
        }
        const auto markers = parse_csv(slurp(dir / "fig2_a_markers.csv"));
        REQUIRE_FALSE(markers.empty());
        CHECK(markers[0][0] == doctest::Approx(oracle::frozen::kFirstCrossing_c06_a12).epsilon(1e-10));
    }
    SUBCASE("8b: two kappa curves") {
        REQUIRE(cl::run_figure("8b", dir, log) == cl::kExitOk);
        CHECK(fs::exists(dir / "fig8_b_kappa0.1.csv"));
        CHECK(fs::exists(dir / "fig8_b_kappa1.csv"));
        const auto k1 = parse_csv(slurp(dir / "fig8_b_kappa1.csv"));
        const auto k01 = parse_csv(slurp(dir / "fig8_b_kappa0.1.csv"));
        CHECK(k1.back()[6] > k01.back()[6]);
    }
    SUBCASE("3: surface table") {
        REQUIRE(cl::run_figure("3", dir, log) == cl::kExitOk);
        std::string header;
        const auto rows = parse_csv(slurp(dir / "fig3_a_surface.csv"), &header);
        CHECK(header == std::string("c3,") + cl::kCsvHeader);
        CHECK(rows.size() == 21 * 201);
    }
    SUBCASE("whole figure and unknown ids") {
        REQUIRE(cl::run_figure("6", dir, log) == cl::kExitOk);
        CHECK(fs::exists(dir / "fig6_a_r0.5.csv"));
        CHECK(fs::exists(dir / "fig6_b_r0.9.csv"));
        CHECK(cl::run_figure("9z", dir, log) == cl::kExitConfig);
    }
}
