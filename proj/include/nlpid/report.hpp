#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlpid/frequency.hpp"
#include "nlpid/simulator.hpp"
#include "nlpid/stability.hpp"

namespace nlpid {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

nlohmann::json to_json(const StabilityVerdict& v);
nlohmann::json to_json(const ConvergenceMetrics& m);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    [[nodiscard]] std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    /// Throws std::out_of_range for an unknown column name.
    [[nodiscard]] const std::vector<double>& column(const std::string& name) const;
};

/// Columns must have equal length. Values use format_double.
void write_csv(std::ostream& out, std::span<const std::string> header,
               std::span<const std::span<const double>> columns);
/// Parses the numeric CSV written by write_csv; throws std::runtime_error on
/// ragged rows or non-numeric cells.
CsvTable read_csv(std::istream& in);

inline const std::vector<std::string> kTrajectoryHeader{"t", "y", "ydot", "integral", "u", "v", "omega"};

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_frequency_csv(std::ostream& out, const FrequencyResponse& fr);

}  // namespace nlpid
