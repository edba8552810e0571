#include "nlpid/commands.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "nlpid/config.hpp"
#include "nlpid/frequency.hpp"
#include "nlpid/grid.hpp"
#include "nlpid/report.hpp"
#include "nlpid/stability.hpp"

namespace nlpid::cli {

namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string());
    }
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    body(out);
    out.flush();
    if (!out) {
        throw IoError("write to " + path.string() + " failed");
    }
}

void write_json(const std::filesystem::path& path, const json& doc) {
    write_file(path, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

RunConfig load(const GlobalOptions& opts) {
    if (opts.config.empty()) {
        throw ConfigError({"--config is required for this command"});
    }
    RunConfig cfg = load_config(opts.config);
    if (opts.seed) {
        cfg.sim.rng_seed = *opts.seed;
    }
    return cfg;
}

/// Maps the error taxonomy onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& ex) {
        err << "config error:\n" << ex.what() << '\n';
        return kConfigError;
    } catch (const IoError& ex) {
        err << "I/O error: " << ex.what() << '\n';
        return kIoError;
    } catch (const DivergenceError& ex) {
        err << "numerical error: " << ex.what() << '\n';
        return kDivergence;
    } catch (const std::invalid_argument& ex) {
        err << "invalid input: " << ex.what() << '\n';
        return kConfigError;
    } catch (const std::domain_error& ex) {
        err << "invalid input: " << ex.what() << '\n';
        return kConfigError;
    }
}

struct Outcome {
    Trajectory traj;
    std::optional<double> diverged_at;
};

/// Runs independent simulations on up to `jobs` threads; results keep input
/// order.
std::vector<Outcome> run_all(const std::vector<SimConfig>& configs, unsigned jobs) {
    std::vector<Outcome> results(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                results[i].traj = simulate(configs[i]);
            } catch (const DivergenceError& ex) {
                results[i].traj = ex.partial();
                results[i].diverged_at = ex.time();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    return results;
}

json controller_json(const ControllerParams& p) {
    return {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}, {"e", p.e}};
}

json outcome_json(const Outcome& o, const std::vector<double>& thresholds, double reference) {
    json j;
    if (o.traj.size() > 0) {
        j["metrics"] = to_json(compute_metrics(o.traj, reference, thresholds));
    }
    j["diverged_at"] = o.diverged_at ? json(*o.diverged_at) : json(nullptr);
    j["warnings"] = o.traj.warnings;
    return j;
}

std::string multiplier_label(double m) { return format_double(m) + "c"; }

}  // namespace

int cmd_stability(const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load(opts);
        const ControllerParams& p = cfg.controller();
        json report;
        report["controller"] = controller_json(p);
        report["routh_hurwitz"] = to_json(routh_hurwitz_3rd(p.a, p.b, p.c));
        try {
            report["circle_exact"] = to_json(circle_exact(p.a, p.b, p.c, p.d));
        } catch (const std::exception& ex) {
            report["circle_exact"] = {{"stable", false}, {"error", ex.what()}};
        }
        if (cfg.actuator().present) {
            const auto grid = default_circle_grid();
            try {
                report["circle_extended"] = to_json(circle_extended(p.a, p.b, p.c, p.d, cfg.actuator(), grid));
            } catch (const std::exception& ex) {
                report["circle_extended"] = {{"stable", false}, {"error", ex.what()}};
            }
            report["actuator"] = {{"kappa", cfg.actuator().kappa}, {"mu", cfg.actuator().mu}};
        }
        ensure_dir(opts.out_dir);
        write_json(opts.out_dir / "stability.json", report);
        out << report.dump(2) << '\n';
        return kOk;
    });
}

int cmd_freq(const GlobalOptions& opts, bool wide, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load(opts);
        const ControllerParams& p = cfg.controller();
        if (!(p.c > 0.0)) {
            throw ConfigError({"controller.c: freq needs a positive integral gain"});
        }
        const auto& an = cfg.analysis;
        const auto grid = log_space(an.omega_min, an.omega_max, an.omega_points);
        ensure_dir(opts.out_dir);

        json peaks = json::array();
        std::vector<std::string> header{"omega"};
        std::vector<FrequencyResponse> series;
        for (double m : {1.0, 2.0, 3.0, 4.0}) {
            const double big_omega = m * p.c;
            const std::string label = multiplier_label(m);
            json entry{{"label", label}, {"multiplier", m}, {"Omega", big_omega}};
            if (!routh_hurwitz_3rd(p.a, p.b, big_omega).stable) {
                entry["error"] = "loop not Hurwitz (Omega >= ab)";
                peaks.push_back(entry);
                continue;
            }
            const SensitivityPeak pk = peak_sensitivity(p.a, p.b, big_omega);
            entry["omega_peak"] = pk.omega_peak;
            entry["peak_value"] = pk.peak_value;
            series.push_back(sensitivity_response(p.a, p.b, big_omega, grid));
            if (wide) {
                header.push_back("magnitude_" + label);
            } else {
                const auto file = "freq_" + label + ".csv";
                write_file(opts.out_dir / file, [&](std::ostream& os) { write_frequency_csv(os, series.back()); });
                entry["file"] = file;
            }
            peaks.push_back(entry);
        }
        json report{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"omega_points", an.omega_points}, {"peaks", peaks}};
        if (wide) {
            std::vector<std::span<const double>> cols{grid};
            for (const auto& s : series) {
                cols.emplace_back(s.magnitudes);
            }
            write_file(opts.out_dir / "freq.csv", [&](std::ostream& os) { write_csv(os, header, cols); });
            report["file"] = "freq.csv";
        }
        write_json(opts.out_dir / "freq_peaks.json", report);
        out << report.dump(2) << '\n';
        return kOk;
    });
}

int cmd_step(const GlobalOptions& opts, const StepOptions& step, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!step.lambda1 || !(*step.lambda1 > 0.0)) {
            throw ConfigError({"--lambda1 must be given and positive"});
        }
        if (!(step.dt > 0.0)) {
            throw ConfigError({"--dt must be positive"});
        }
        const double l1 = *step.lambda1;
        std::vector<std::pair<std::string, double>> gains;
        if (step.omegas.empty()) {
            const RunConfig cfg = load(opts);
            const double c = cfg.controller().c;
            if (!(c > 0.0)) {
                throw ConfigError({"controller.c: default Omega set needs a positive integral gain"});
            }
            for (double m : {0.5, 1.0, 2.0}) {
                gains.emplace_back(multiplier_label(m), m * c);
            }
        } else {
            for (double w : step.omegas) {
                gains.emplace_back(format_double(w), w);
            }
        }
        double slowest = l1;
        for (const auto& [label, w] : gains) {
            if (!(w > 0.0)) {
                throw ConfigError({"Omega " + label + " must be positive"});
            }
            if (std::abs(w - l1 * l1 * l1) <= 1e-9 * w) {
                throw ConfigError({"Omega " + label + " is degenerate (equals lambda1^3)"});
            }
            slowest = std::min(slowest, w / (l1 * l1));
        }
        const auto n = static_cast<std::size_t>(std::floor(20.0 / slowest / step.dt * (1.0 + 1e-12)));
        std::vector<double> t(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            t[i] = static_cast<double>(i) * step.dt;
        }

        ensure_dir(opts.out_dir);
        json peaks = json::array();
        static const std::vector<std::string> header{"t", "y"};
        for (const auto& [label, w] : gains) {
            std::vector<double> y(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) {
                y[i] = step_response_omega_form(l1, w, t[i]);
            }
            const TransientPeak pk = transient_peak(l1, w, step.dt);
            const std::string file = "step_" + label + ".csv";
            const std::array<std::span<const double>, 2> cols{t, y};
            write_file(opts.out_dir / file, [&](std::ostream& os) { write_csv(os, header, cols); });
            peaks.push_back({{"label", label},
                             {"Omega", w},
                             {"lambda2", w / (l1 * l1)},
                             {"t_peak", pk.t_peak},
                             {"peak", pk.peak},
                             {"final_value", y.back()},
                             {"file", file}});
        }
        json report{{"lambda1", l1}, {"dt", step.dt}, {"duration", t.back()}, {"series", peaks}};
        write_json(opts.out_dir / "step_peaks.json", report);
        out << report.dump(2) << '\n';
        return kOk;
    });
}

int cmd_simulate(const GlobalOptions& opts, bool sweep, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load(opts);
        const auto& thresholds = cfg.analysis.thresholds;
        const double r = cfg.sim.reference;
        ensure_dir(opts.out_dir);

        if (!sweep) {
            const auto results = run_all({cfg.sim}, 1);
            const Outcome& o = results.front();
            write_file(opts.out_dir / "trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, o.traj); });
            json report = outcome_json(o, thresholds, r);
            report["controller"] = controller_json(cfg.controller());
            report["file"] = "trajectory.csv";
            write_json(opts.out_dir / "metrics.json", report);
            out << report.dump(2) << '\n';
            if (o.diverged_at) {
                err << "numerical error: trajectory diverged at t=" << format_double(*o.diverged_at) << '\n';
                return kDivergence;
            }
            return kOk;
        }

        struct Variant {
            std::string family;
            std::string file;
            SimConfig sim;
        };
        std::vector<Variant> variants;
        auto with = [&](double d, double e) {
            SimConfig s = cfg.sim;
            s.controller.d = d;
            s.controller.e = d == 0.0 ? 0.0 : e;
            return s;
        };
        for (double d : {0.0, 1.0, 2.0, 3.0}) {
            variants.push_back({"d_sweep", "sweep_d_" + format_double(d) + ".csv", with(d, -10.0)});
        }
        variants.push_back({"e_sweep", "sweep_e_baseline.csv", with(0.0, 0.0)});
        for (double e : {-10.0, -100.0, -1000.0}) {
            variants.push_back({"e_sweep", "sweep_e_" + format_double(e) + ".csv", with(2.0, e)});
        }
        std::vector<SimConfig> sims;
        for (const auto& v : variants) {
            sims.push_back(v.sim);
        }
        const auto results = run_all(sims, opts.jobs);

        json report{{"d_sweep", json::array()}, {"e_sweep", json::array()}};
        std::optional<ConvergenceMetrics> pid_metrics;
        if (results.front().traj.size() > 0) {
            pid_metrics = compute_metrics(results.front().traj, r, thresholds);
        }
        bool diverged = false;
        for (std::size_t i = 0; i < variants.size(); ++i) {
            const auto& v = variants[i];
            const auto& o = results[i];
            write_file(opts.out_dir / v.file, [&](std::ostream& os) { write_trajectory_csv(os, o.traj); });
            json entry = outcome_json(o, thresholds, r);
            entry["d"] = v.sim.controller.d;
            entry["e"] = v.sim.controller.e;
            entry["file"] = v.file;
            if (pid_metrics && o.traj.size() > 0 && !v.sim.controller.is_linear()) {
                entry["beats_pid_at"] = thresholds_won(compute_metrics(o.traj, r, thresholds), *pid_metrics);
            }
            diverged = diverged || o.diverged_at.has_value();
            report[v.family].push_back(entry);
        }
        write_json(opts.out_dir / "sweep_metrics.json", report);
        out << report.dump(2) << '\n';
        if (diverged) {
            err << "numerical error: at least one sweep variant diverged\n";
            return kDivergence;
        }
        return kOk;
    });
}

int cmd_benchmark(const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load(opts);
        if (!cfg.actuator().present) {
            throw ConfigError({"benchmark needs an actuator block (kappa, mu)"});
        }
        const ControllerParams& p = cfg.controller();
        const auto& thresholds = cfg.analysis.thresholds;
        const double r = cfg.sim.reference;

        const std::vector<std::pair<std::string, ControllerParams>> laws{
            {"PD", ControllerParams::pd(p.a, p.b)},
            {"PID", ControllerParams::pid(p.a, p.b, p.c)},
            {"nl-PID", p},
        };
        std::vector<SimConfig> sims;
        for (const auto& [name, params] : laws) {
            SimConfig s = cfg.sim;
            s.controller = params;
            sims.push_back(s);
        }
        const auto results = run_all(sims, opts.jobs);
        ensure_dir(opts.out_dir);

        json controllers = json::object();
        std::vector<std::pair<std::string, ConvergenceMetrics>> metrics;
        bool diverged = false;
        for (std::size_t i = 0; i < laws.size(); ++i) {
            const auto& name = laws[i].first;
            std::string file = "benchmark_" + name + ".csv";
            std::replace(file.begin(), file.end(), '-', '_');
            write_file(opts.out_dir / file, [&](std::ostream& os) { write_trajectory_csv(os, results[i].traj); });
            json entry = outcome_json(results[i], thresholds, r);
            entry["gains"] = controller_json(laws[i].second);
            entry["file"] = file;
            controllers[name] = entry;
            diverged = diverged || results[i].diverged_at.has_value();
            if (results[i].traj.size() > 0 && !results[i].diverged_at) {
                metrics.emplace_back(name, compute_metrics(results[i].traj, r, thresholds));
            }
        }

        auto find = [&](const std::string& name) -> const ConvergenceMetrics* {
            for (const auto& [n, m] : metrics) {
                if (n == name) return &m;
            }
            return nullptr;
        };
        if (const auto* nl = find("nl-PID"); nl != nullptr) {
            if (const auto* pid = find("PID"); pid != nullptr) {
                const auto won = thresholds_won(*nl, *pid);
                controllers["nl-PID"]["beats_pid_at"] = won;
                controllers["nl-PID"]["beats_pid"] = !won.empty();
            }
        }

        auto ranked = metrics;
        std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
            return x.second.final_abs_error < y.second.final_abs_error;
        });
        json by_final = json::array();
        for (const auto& [name, m] : ranked) {
            by_final.push_back(name);
        }
        json by_settling = json::object();
        for (double eps : thresholds) {
            auto order = metrics;
            std::stable_sort(order.begin(), order.end(), [eps](const auto& x, const auto& y) {
                const auto& tx = x.second.settling_times.at(eps);
                const auto& ty = y.second.settling_times.at(eps);
                if (tx && ty) return *tx < *ty;
                return tx.has_value() && !ty.has_value();
            });
            json names = json::array();
            for (const auto& [name, m] : order) {
                names.push_back(name);
            }
            by_settling[format_double(eps)] = names;
        }

        json report{{"actuator", {{"kappa", cfg.actuator().kappa}, {"mu", cfg.actuator().mu}}},
                    {"controllers", controllers},
                    {"ranking_by_final_abs_error", by_final},
                    {"ranking_by_settling_time", by_settling}};
        write_json(opts.out_dir / "benchmark.json", report);
        out << report.dump(2) << '\n';
        if (diverged) {
            err << "numerical error: at least one controller diverged\n";
            return kDivergence;
        }
        return kOk;
    });
}

}  // namespace nlpid::cli
