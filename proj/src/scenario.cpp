#include "cavdiscord/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace cavdiscord {

namespace {

const std::set<std::string> kKnownKeys = {"family",   "c1",       "c2",         "c3",       "r",
                                          "alpha_re", "alpha_im", "kappa",      "tau_max",  "samples",
                                          "fock_dim", "rk4_step", "grid_theta", "grid_phi", "refine"};

double get_number(const nlohmann::json& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (!v.is_number()) throw ConfigError("scenario key '" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("scenario key '" + key + "' must be finite");
    return x;
}

int get_int(const nlohmann::json& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (!v.is_number_integer()) throw ConfigError("scenario key '" + key + "' must be an integer");
    return v.get<int>();
}

void require(const nlohmann::json& doc, const std::string& key, const std::string& family) {
    if (!doc.contains(key)) throw ConfigError("family '" + family + "' requires key '" + key + "'");
}

void forbid(const nlohmann::json& doc, const std::string& key, const std::string& family) {
    if (doc.contains(key)) throw ConfigError("key '" + key + "' does not belong to family '" + family + "'");
}

}  // namespace

SearchOptions Scenario::search_options() const {
    SearchOptions opts;
    if (grid_theta) opts.theta_points = *grid_theta;
    if (grid_phi) opts.phi_points = *grid_phi;
    if (refine) opts.refine_iters = *refine;
    return opts;
}

Scenario parse_scenario(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (!kKnownKeys.contains(key)) throw ConfigError("unknown scenario key '" + key + "'");
        if (value.is_object() || value.is_array()) throw ConfigError("scenario key '" + key + "' must be flat");
    }
    for (const char* key : {"family", "alpha_re", "kappa", "tau_max", "samples"}) {
        if (!doc.contains(key)) throw ConfigError(std::string("scenario is missing key '") + key + "'");
    }
    if (!doc.at("family").is_string()) throw ConfigError("scenario key 'family' must be a string");

    Scenario s;
    const std::string family = doc.at("family").get<std::string>();
    if (family == "frozen") {
        require(doc, "c3", family);
        for (const char* k : {"c1", "c2", "r"}) forbid(doc, k, family);
        const double c3 = get_number(doc, "c3");
        if (!(std::abs(c3) < 1.0)) throw ParameterError("frozen family needs |c3| < 1");
        s.state = FrozenFamily{c3};
    } else if (family == "werner") {
        require(doc, "r", family);
        for (const char* k : {"c1", "c2", "c3"}) forbid(doc, k, family);
        const double r = get_number(doc, "r");
        werner_params(r);
        s.state = WernerParams{r};
    } else if (family == "general") {
        for (const char* k : {"c1", "c2", "c3"}) require(doc, k, family);
        forbid(doc, "r", family);
        const XStateParams c{get_number(doc, "c1"), get_number(doc, "c2"), get_number(doc, "c3")};
        if (auto report = validate_physicality(c); !report) {
            throw ParameterError("x state rejected: " + report.describe());
        }
        s.state = c;
    } else {
        throw ConfigError("unknown family '" + family + "' (expected frozen, werner or general)");
    }

    s.channel.alpha = {get_number(doc, "alpha_re"), doc.contains("alpha_im") ? get_number(doc, "alpha_im") : 0.0};
    s.channel.kappa = get_number(doc, "kappa");
    s.channel.validate();

    s.tau_max = get_number(doc, "tau_max");
    if (!(s.tau_max >= 0.0)) throw ConfigError("tau_max must be >= 0");
    s.samples = get_int(doc, "samples");
    if (s.samples < 1) throw ConfigError("samples must be >= 1");

    if (doc.contains("fock_dim")) {
        s.fock_dim = get_int(doc, "fock_dim");
        if (*s.fock_dim < 2) throw ConfigError("fock_dim must be >= 2");
    }
    if (doc.contains("rk4_step")) {
        s.rk4_step = get_number(doc, "rk4_step");
        if (!(*s.rk4_step > 0.0)) throw ConfigError("rk4_step must be > 0");
    }
    if (doc.contains("grid_theta")) s.grid_theta = get_int(doc, "grid_theta");
    if (doc.contains("grid_phi")) s.grid_phi = get_int(doc, "grid_phi");
    if (doc.contains("refine")) s.refine = get_int(doc, "refine");
    if ((s.grid_theta && *s.grid_theta < 8) || (s.grid_phi && *s.grid_phi < 8)) {
        throw ConfigError("optimizer grids need at least 8 points");
    }
    if (s.refine && *s.refine < 0) throw ConfigError("refine must be >= 0");
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("scenario " + path.string() + ": " + e.what());
    }
    return parse_scenario(doc);
}

}  // namespace cavdiscord
