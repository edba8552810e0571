#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlpid/simulator.hpp"

namespace nlpid {

/// Schema or value problems in a run configuration. what() joins all
/// diagnostics with newlines.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> diagnostics);
    [[nodiscard]] const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    std::vector<std::string> diagnostics_;
};

struct AnalysisConfig {
    double omega_min = 1e-2;
    double omega_max = 1e3;
    std::size_t omega_points = 2000;
    std::vector<double> thresholds{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
};

/// Parsed run configuration file (schema version 1).
///
/// {
///   "version": 1,
///   "controller":  {"a", "b", "c", "d", "e"},
///   "actuator":    {"kappa", "mu"} or null,
///   "disturbance": {"kind", "amplitude", "start_time", "frequency", "slope"},
///   "simulation":  {"dt", "duration", "y0", "ydot0", "integral0", "reference",
///                   "noise_std", "rng_seed"},
///   "analysis":    {"omega_min", "omega_max", "omega_points", "thresholds"}
/// }
///
/// Only "version" and "controller" (with "a", "b") are required; unknown keys
/// are rejected at every level.
struct RunConfig {
    SimConfig sim;
    AnalysisConfig analysis;

    [[nodiscard]] const ControllerParams& controller() const { return sim.controller; }
    [[nodiscard]] const ActuatorSpec& actuator() const { return sim.actuator; }
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
/// Throws ConfigError for schema problems and for unreadable files.
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace nlpid
