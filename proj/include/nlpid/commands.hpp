#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nlpid::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kDivergence = 3,
    kIoError = 4,
};

struct GlobalOptions {
    std::filesystem::path config;
    std::filesystem::path out_dir = ".";
    unsigned jobs = 1;
    std::optional<std::uint64_t> seed;
};

struct StepOptions {
    std::optional<double> lambda1;
    std::vector<double> omegas;  ///< empty: 0.5c, 1c, 2c from the config
    double dt = 1e-4;
};

/// Each command writes its artifacts into out_dir, prints a JSON summary on
/// `out`, diagnostics on `err`, and returns an ExitCode.
int cmd_stability(const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_freq(const GlobalOptions& opts, bool wide, std::ostream& out, std::ostream& err);
int cmd_step(const GlobalOptions& opts, const StepOptions& step, std::ostream& out, std::ostream& err);
int cmd_simulate(const GlobalOptions& opts, bool sweep, std::ostream& out, std::ostream& err);
int cmd_benchmark(const GlobalOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace nlpid::cli
