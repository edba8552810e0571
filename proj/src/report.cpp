#include "nlpid/report.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nlpid {

std::string format_double(double x) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) {
        throw std::runtime_error("cannot format double");
    }
    return {buf.data(), end};
}

nlohmann::json to_json(const StabilityVerdict& v) {
    nlohmann::json j;
    j["stable"] = v.stable;
    j["margin"] = v.margin;
    j["witness_omega"] = v.witness_omega ? nlohmann::json(*v.witness_omega) : nlohmann::json(nullptr);
    j["marginal"] = v.marginal;
    if (!v.note.empty()) {
        j["note"] = v.note;
    }
    return j;
}

nlohmann::json to_json(const ConvergenceMetrics& m) {
    nlohmann::json settling = nlohmann::json::object();
    for (const auto& [eps, t0] : m.settling_times) {
        settling[format_double(eps)] = t0 ? nlohmann::json(*t0) : nlohmann::json(nullptr);
    }
    return {{"settling_times", settling},
            {"peak_abs_error", m.peak_abs_error},
            {"final_abs_error", m.final_abs_error}};
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return columns[i];
        }
    }
    throw std::out_of_range("no CSV column '" + name + "'");
}

void write_csv(std::ostream& out, std::span<const std::string> header,
               std::span<const std::span<const double>> columns) {
    if (header.size() != columns.size()) {
        throw std::invalid_argument("CSV header and column count differ");
    }
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns) {
        if (col.size() != rows) {
            throw std::invalid_argument("CSV columns have different lengths");
        }
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << '\n';
    std::string line;
    for (std::size_t r = 0; r < rows; ++r) {
        line.clear();
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) {
                line += ',';
            }
            line += format_double(columns[c][r]);
        }
        line += '\n';
        out << line;
    }
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("CSV is empty");
    }
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) {
            table.header.push_back(cell);
        }
    }
    table.columns.resize(table.header.size());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) {
            continue;
        }
        std::size_t col = 0;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (true) {
            if (col >= table.columns.size()) {
                throw std::runtime_error("CSV row " + std::to_string(row) + " has too many cells");
            }
            double value = 0.0;
            const auto [next, ec] = std::from_chars(p, end, value);
            if (ec != std::errc{}) {
                throw std::runtime_error("CSV row " + std::to_string(row) + " has a non-numeric cell");
            }
            table.columns[col++].push_back(value);
            if (next == end) {
                break;
            }
            if (*next != ',') {
                throw std::runtime_error("CSV row " + std::to_string(row) + " is malformed");
            }
            p = next + 1;
        }
        if (col != table.columns.size()) {
            throw std::runtime_error("CSV row " + std::to_string(row) + " has too few cells");
        }
    }
    return table;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    const std::array<std::span<const double>, 7> cols{traj.t, traj.y,    traj.ydot,      traj.integral,
                                                      traj.u, traj.v, traj.omega_gain};
    write_csv(out, kTrajectoryHeader, cols);
}

void write_frequency_csv(std::ostream& out, const FrequencyResponse& fr) {
    static const std::vector<std::string> header{"omega", "magnitude"};
    const std::array<std::span<const double>, 2> cols{fr.omegas, fr.magnitudes};
    write_csv(out, header, cols);
}

}  // namespace nlpid
