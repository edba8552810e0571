#include "nlpid/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "nlpid/stability.hpp"

namespace nlpid {

namespace {

constexpr double kDivergenceBound = 1e9;

using State = std::array<double, 4>;  // integral, y, ydot, v

State axpy(const State& x, double h, const State& k) {
    return {x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2], x[3] + h * k[3]};
}

bool finite(const State& x) {
    return std::all_of(x.begin(), x.end(), [](double s) { return std::isfinite(s); });
}

std::string format_time(double t) {
    std::ostringstream os;
    os << t;
    return os.str();
}

}  // namespace

std::string_view to_string(DisturbanceKind kind) {
    switch (kind) {
        case DisturbanceKind::constant: return "constant";
        case DisturbanceKind::step: return "step";
        case DisturbanceKind::sinusoid: return "sinusoid";
        case DisturbanceKind::ramp: return "ramp";
    }
    return "constant";
}

DisturbanceKind disturbance_kind_from_string(std::string_view name) {
    if (name == "constant") return DisturbanceKind::constant;
    if (name == "step") return DisturbanceKind::step;
    if (name == "sinusoid") return DisturbanceKind::sinusoid;
    if (name == "ramp") return DisturbanceKind::ramp;
    throw std::invalid_argument("unknown disturbance kind '" + std::string(name) + "'");
}

double DisturbanceSpec::lipschitz_bound() const {
    switch (kind) {
        case DisturbanceKind::sinusoid: return std::abs(amplitude * frequency);
        case DisturbanceKind::ramp: return std::abs(slope);
        default: return 0.0;
    }
}

void DisturbanceSpec::validate() const {
    if (!std::isfinite(amplitude) || !std::isfinite(start_time) || !std::isfinite(frequency) ||
        !std::isfinite(slope)) {
        throw std::invalid_argument("disturbance parameters must be finite");
    }
    if (kind == DisturbanceKind::step && start_time < 0.0) {
        throw std::invalid_argument("step start_time must be non-negative");
    }
}

double disturbance_value(const DisturbanceSpec& spec, double t) {
    switch (spec.kind) {
        case DisturbanceKind::constant: return spec.amplitude;
        case DisturbanceKind::step: return t < spec.start_time ? 0.0 : spec.amplitude;
        case DisturbanceKind::sinusoid: return spec.amplitude * std::sin(spec.frequency * t);
        case DisturbanceKind::ramp: return spec.slope * t;
    }
    return 0.0;
}

void SimConfig::validate() const {
    controller.validate();
    actuator.validate();
    disturbance.validate();
    for (double x : {reference, y0, ydot0, integral0, dt, duration, noise_std}) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("simulation parameters must be finite");
        }
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("dt must be positive");
    }
    if (duration < dt) {
        throw std::invalid_argument("duration must be at least dt");
    }
    if (noise_std < 0.0) {
        throw std::invalid_argument("noise_std must be non-negative");
    }
}

std::size_t SimConfig::step_count() const {
    const double ratio = duration / dt;
    return static_cast<std::size_t>(std::floor(ratio * (1.0 + 1e-12)));
}

DivergenceError::DivergenceError(double t, Trajectory partial)
    : std::runtime_error("trajectory diverged at t=" + format_time(t)), t_(t), partial_(std::move(partial)) {}

Trajectory simulate(const SimConfig& cfg) {
    cfg.validate();
    const ControllerParams& p = cfg.controller;
    const ActuatorSpec& act = cfg.actuator;
    const std::size_t steps = cfg.step_count();
    const double dt = cfg.dt;

    Trajectory traj;
    const bool linear = cfg.law == ControlLaw::linear_pid || p.is_linear();
    if (linear && p.c > 0.0 && !routh_hurwitz_3rd(p.a, p.b, p.c).stable) {
        traj.warnings.emplace_back("linear loop fails Routh-Hurwitz (ab - c <= 0)");
    }
    for (auto* series : {&traj.t, &traj.y, &traj.ydot, &traj.integral, &traj.u, &traj.v,
                         &traj.omega_gain}) {
        series->reserve(steps + 1);
    }

    std::mt19937_64 rng(cfg.rng_seed);
    std::normal_distribution<double> noise_dist(0.0, cfg.noise_std > 0.0 ? cfg.noise_std : 1.0);
    auto draw_noise = [&]() { return cfg.noise_std > 0.0 ? noise_dist(rng) : 0.0; };

    auto control = [&](const State& x, double noise) {
        const double eps = cfg.reference - (x[1] + noise);
        const double eps_dot = -x[2];
        const ControllerState cs{x[0]};
        const double u = cfg.law == ControlLaw::linear_pid ? pid_output(p, eps, eps_dot, cs)
                                                            : control_output(p, eps, eps_dot, cs);
        return std::pair{eps, u};
    };

    const long long step_on = std::llround(cfg.disturbance.start_time / dt);
    auto sigma_at = [&](std::size_t k, double t) {
        if (cfg.disturbance.kind == DisturbanceKind::step) {
            return static_cast<long long>(k) >= step_on ? cfg.disturbance.amplitude : 0.0;
        }
        return disturbance_value(cfg.disturbance, t);
    };

    auto rhs = [&](const State& x, double sigma, double noise) {
        const auto [eps, u] = control(x, noise);
        const double drive = act.present ? x[3] : u;
        const double vdot = act.present ? (act.kappa * u - x[3]) / act.mu : 0.0;
        return State{eps, x[2], drive + sigma, vdot};
    };

    auto record = [&](double t, const State& x, double noise) {
        const auto [eps, u] = control(x, noise);
        traj.t.push_back(t);
        traj.y.push_back(x[1]);
        traj.ydot.push_back(x[2]);
        traj.integral.push_back(x[0]);
        traj.u.push_back(u);
        traj.v.push_back(act.present ? x[3] : u);
        traj.omega_gain.push_back(cfg.law == ControlLaw::linear_pid ? p.c : omega_gain(p, eps));
    };

    State x{cfg.integral0, cfg.y0, cfg.ydot0, 0.0};
    double noise = draw_noise();
    record(0.0, x, noise);

    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double half = t + 0.5 * dt;
        const double next = static_cast<double>(k + 1) * dt;
        const State k1 = rhs(x, sigma_at(k, t), noise);
        const State k2 = rhs(axpy(x, 0.5 * dt, k1), sigma_at(k, half), noise);
        const State k3 = rhs(axpy(x, 0.5 * dt, k2), sigma_at(k, half), noise);
        const State k4 = rhs(axpy(x, dt, k3), sigma_at(k, next), noise);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if (!finite(x) || std::abs(x[1]) > kDivergenceBound) {
            throw DivergenceError(next, std::move(traj));
        }
        noise = draw_noise();
        record(next, x, noise);
    }
    return traj;
}

ConvergenceMetrics compute_metrics(const Trajectory& traj, double reference,
                                   std::span<const double> thresholds) {
    if (traj.size() == 0) {
        throw std::invalid_argument("empty trajectory");
    }
    ConvergenceMetrics m;
    for (double y : traj.y) {
        m.peak_abs_error = std::max(m.peak_abs_error, std::abs(reference - y));
    }
    m.final_abs_error = std::abs(reference - traj.y.back());
    for (double eps : thresholds) {
        if (!(eps > 0.0)) {
            throw std::invalid_argument("settling thresholds must be positive");
        }
        std::optional<double> settled;
        std::size_t i = traj.size();
        while (i > 0 && std::abs(reference - traj.y[i - 1]) < eps) {
            --i;
        }
        if (i < traj.size()) {
            settled = traj.t[i];
        }
        m.settling_times[eps] = settled;
    }
    return m;
}

double steady_state_amplitude(const Trajectory& traj, double window, double reference) {
    if (traj.size() == 0) {
        throw std::invalid_argument("empty trajectory");
    }
    const double t_end = traj.t.back();
    if (!(window < t_end - traj.t.front())) {
        throw std::invalid_argument("window must be shorter than the simulated duration");
    }
    double amplitude = 0.0;
    for (std::size_t i = traj.size(); i-- > 0 && traj.t[i] >= t_end - window;) {
        amplitude = std::max(amplitude, std::abs(reference - traj.y[i]));
    }
    return amplitude;
}

std::vector<double> thresholds_won(const ConvergenceMetrics& candidate,
                                   const ConvergenceMetrics& baseline) {
    std::vector<double> won;
    for (const auto& [eps, t_candidate] : candidate.settling_times) {
        const auto it = baseline.settling_times.find(eps);
        if (!t_candidate || it == baseline.settling_times.end()) {
            continue;
        }
        if (!it->second || *t_candidate < *it->second) {
            won.push_back(eps);
        }
    }
    return won;
}

}  // namespace nlpid
