#include "nlpid/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace nlpid {

namespace {

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& line : lines) {
        if (!out.empty()) {
            out += '\n';
        }
        out += line;
    }
    return out;
}

/// Collects diagnostics while walking the document so that one pass reports
/// every problem.
class Reader {
public:
    void check_keys(const nlohmann::json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
        const std::set<std::string> known(allowed.begin(), allowed.end());
        for (const auto& [key, value] : obj.items()) {
            if (!known.contains(key)) {
                errors.push_back(where + ": unknown key '" + key + "'");
            }
        }
    }

    bool object(const nlohmann::json& parent, const char* key, const std::string& where) {
        if (!parent.contains(key)) {
            return false;
        }
        if (!parent.at(key).is_object()) {
            errors.push_back(where + "." + key + ": expected an object");
            return false;
        }
        return true;
    }

    void number(const nlohmann::json& obj, const char* key, const std::string& where, double& out,
                bool required = false) {
        if (!obj.contains(key)) {
            if (required) {
                errors.push_back(where + "." + key + ": required");
            }
            return;
        }
        const auto& value = obj.at(key);
        if (!value.is_number()) {
            errors.push_back(where + "." + key + ": expected a number");
            return;
        }
        const double x = value.get<double>();
        if (!std::isfinite(x)) {
            errors.push_back(where + "." + key + ": must be finite");
            return;
        }
        out = x;
    }

    template <typename Int>
    void integer(const nlohmann::json& obj, const char* key, const std::string& where, Int& out) {
        if (!obj.contains(key)) {
            return;
        }
        const auto& value = obj.at(key);
        if (!value.is_number_integer() || (!value.is_number_unsigned() && value.get<long long>() < 0)) {
            errors.push_back(where + "." + key + ": expected a non-negative integer");
            return;
        }
        out = value.get<Int>();
    }

    std::vector<std::string> errors;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

RunConfig parse_config(const nlohmann::json& doc) {
    Reader r;
    RunConfig cfg;
    if (!doc.is_object()) {
        throw ConfigError({"config: top level must be an object"});
    }
    r.check_keys(doc, "config",
                 {"version", "controller", "actuator", "disturbance", "simulation", "analysis"});
    if (!doc.contains("version")) {
        r.errors.emplace_back("config.version: required");
    } else if (!doc.at("version").is_number_integer() || doc.at("version").get<long long>() != 1) {
        r.errors.emplace_back("config.version: only version 1 is supported");
    }

    ControllerParams& ctl = cfg.sim.controller;
    if (r.object(doc, "controller", "config")) {
        const auto& c = doc.at("controller");
        r.check_keys(c, "controller", {"a", "b", "c", "d", "e"});
        r.number(c, "a", "controller", ctl.a, true);
        r.number(c, "b", "controller", ctl.b, true);
        r.number(c, "c", "controller", ctl.c);
        r.number(c, "d", "controller", ctl.d);
        r.number(c, "e", "controller", ctl.e);
    } else if (!doc.contains("controller")) {
        r.errors.emplace_back("config.controller: required");
    }

    if (doc.contains("actuator") && !doc.at("actuator").is_null()) {
        if (r.object(doc, "actuator", "config")) {
            const auto& a = doc.at("actuator");
            r.check_keys(a, "actuator", {"kappa", "mu"});
            cfg.sim.actuator.present = true;
            r.number(a, "kappa", "actuator", cfg.sim.actuator.kappa);
            r.number(a, "mu", "actuator", cfg.sim.actuator.mu, true);
        }
    }

    if (r.object(doc, "disturbance", "config")) {
        const auto& d = doc.at("disturbance");
        r.check_keys(d, "disturbance", {"kind", "amplitude", "start_time", "frequency", "slope"});
        if (d.contains("kind")) {
            if (!d.at("kind").is_string()) {
                r.errors.emplace_back("disturbance.kind: expected a string");
            } else {
                try {
                    cfg.sim.disturbance.kind = disturbance_kind_from_string(d.at("kind").get<std::string>());
                } catch (const std::invalid_argument& ex) {
                    r.errors.emplace_back(std::string("disturbance.kind: ") + ex.what());
                }
            }
        }
        r.number(d, "amplitude", "disturbance", cfg.sim.disturbance.amplitude);
        r.number(d, "start_time", "disturbance", cfg.sim.disturbance.start_time);
        r.number(d, "frequency", "disturbance", cfg.sim.disturbance.frequency);
        r.number(d, "slope", "disturbance", cfg.sim.disturbance.slope);
    }

    if (r.object(doc, "simulation", "config")) {
        const auto& s = doc.at("simulation");
        r.check_keys(s, "simulation",
                     {"dt", "duration", "y0", "ydot0", "integral0", "reference", "noise_std", "rng_seed"});
        r.number(s, "dt", "simulation", cfg.sim.dt);
        r.number(s, "duration", "simulation", cfg.sim.duration);
        r.number(s, "y0", "simulation", cfg.sim.y0);
        r.number(s, "ydot0", "simulation", cfg.sim.ydot0);
        r.number(s, "integral0", "simulation", cfg.sim.integral0);
        r.number(s, "reference", "simulation", cfg.sim.reference);
        r.number(s, "noise_std", "simulation", cfg.sim.noise_std);
        r.integer(s, "rng_seed", "simulation", cfg.sim.rng_seed);
    }

    if (r.object(doc, "analysis", "config")) {
        const auto& a = doc.at("analysis");
        r.check_keys(a, "analysis", {"omega_min", "omega_max", "omega_points", "thresholds"});
        r.number(a, "omega_min", "analysis", cfg.analysis.omega_min);
        r.number(a, "omega_max", "analysis", cfg.analysis.omega_max);
        r.integer(a, "omega_points", "analysis", cfg.analysis.omega_points);
        if (a.contains("thresholds")) {
            const auto& th = a.at("thresholds");
            if (!th.is_array() || th.empty()) {
                r.errors.emplace_back("analysis.thresholds: expected a non-empty array");
            } else {
                cfg.analysis.thresholds.clear();
                for (const auto& x : th) {
                    if (!x.is_number() || !(x.get<double>() > 0.0) || !std::isfinite(x.get<double>())) {
                        r.errors.emplace_back("analysis.thresholds: entries must be positive numbers");
                        break;
                    }
                    cfg.analysis.thresholds.push_back(x.get<double>());
                }
            }
        }
    }

    if (r.errors.empty()) {
        try {
            cfg.sim.validate();
        } catch (const std::invalid_argument& ex) {
            r.errors.emplace_back(ex.what());
        }
        const auto& an = cfg.analysis;
        if (!(an.omega_min > 0.0) || !(an.omega_max > an.omega_min) || an.omega_points < 2) {
            r.errors.emplace_back("analysis: need 0 < omega_min < omega_max and omega_points >= 2");
        }
    }
    if (!r.errors.empty()) {
        throw ConfigError(std::move(r.errors));
    }
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw ConfigError({std::string("config: invalid JSON: ") + ex.what()});
    }
    return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError({"config: cannot open " + path.string()});
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

nlohmann::json to_json(const RunConfig& cfg) {
    const auto& s = cfg.sim;
    nlohmann::json doc;
    doc["version"] = 1;
    doc["controller"] = {{"a", s.controller.a}, {"b", s.controller.b}, {"c", s.controller.c},
                         {"d", s.controller.d}, {"e", s.controller.e}};
    if (s.actuator.present) {
        doc["actuator"] = {{"kappa", s.actuator.kappa}, {"mu", s.actuator.mu}};
    } else {
        doc["actuator"] = nullptr;
    }
    doc["disturbance"] = {{"kind", std::string(to_string(s.disturbance.kind))},
                          {"amplitude", s.disturbance.amplitude},
                          {"start_time", s.disturbance.start_time},
                          {"frequency", s.disturbance.frequency},
                          {"slope", s.disturbance.slope}};
    doc["simulation"] = {{"dt", s.dt},           {"duration", s.duration},   {"y0", s.y0},
                         {"ydot0", s.ydot0},     {"integral0", s.integral0}, {"reference", s.reference},
                         {"noise_std", s.noise_std}, {"rng_seed", s.rng_seed}};
    doc["analysis"] = {{"omega_min", cfg.analysis.omega_min},
                       {"omega_max", cfg.analysis.omega_max},
                       {"omega_points", cfg.analysis.omega_points},
                       {"thresholds", cfg.analysis.thresholds}};
    return doc;
}

}  // namespace nlpid
