#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nlpid/control_laws.hpp"
#include "nlpid/transfer_function.hpp"

namespace nlpid {

enum class DisturbanceKind { constant, step, sinusoid, ramp };

std::string_view to_string(DisturbanceKind kind);
/// Throws std::invalid_argument for unknown names.
DisturbanceKind disturbance_kind_from_string(std::string_view name);

/// Matched disturbance sigma(t) entering the plant alongside the control.
struct DisturbanceSpec {
    DisturbanceKind kind = DisturbanceKind::constant;
    double amplitude = 0.0;   ///< m/s^2
    double start_time = 0.0;  ///< s, step only
    double frequency = 0.0;   ///< rad/s, sinusoid only
    double slope = 0.0;       ///< m/s^3, ramp only

    /// Sigma with |d sigma/dt| <= Sigma; zero for constant and step.
    [[nodiscard]] double lipschitz_bound() const;
    void validate() const;
};

double disturbance_value(const DisturbanceSpec& spec, double t);

enum class ControlLaw {
    nonlinear,   ///< full law with Omega(eps)
    linear_pid,  ///< dedicated PID path, d and e ignored
};

struct SimConfig {
    ControllerParams controller;
    ControlLaw law = ControlLaw::nonlinear;
    ActuatorSpec actuator;
    DisturbanceSpec disturbance;
    double reference = 0.0;  ///< constant set point r, m
    double y0 = 0.0;
    double ydot0 = 0.0;
    double integral0 = 0.0;
    double dt = 1e-4;
    double duration = 1.0;
    double noise_std = 0.0;  ///< additive Gaussian on measured y; 0 disables
    std::uint64_t rng_seed = 0;

    void validate() const;
    /// floor(duration / dt), tolerant of representation error in the ratio.
    [[nodiscard]] std::size_t step_count() const;
};

/// Closed-loop samples, one per integration step plus the initial state.
struct Trajectory {
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> ydot;
    std::vector<double> integral;
    std::vector<double> u;
    std::vector<double> v;  ///< actuator output; equals u without an actuator
    std::vector<double> omega_gain;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t size() const { return t.size(); }
};

class DivergenceError : public std::runtime_error {
public:
    DivergenceError(double t, Trajectory partial);

    [[nodiscard]] double time() const { return t_; }
    [[nodiscard]] const Trajectory& partial() const { return partial_; }

private:
    double t_;
    Trajectory partial_;
};

/// Fixed-step classical RK4 on the state (integral of eps, y, ydot[, v]).
///
/// The measured output y + noise is held across the four stages of a step.
/// Step disturbances switch on at the sample nearest to start_time. Throws
/// DivergenceError if |y| exceeds 1e9 or the state becomes non-finite.
Trajectory simulate(const SimConfig& cfg);

struct ConvergenceMetrics {
    /// threshold -> last-exit settling time, nullopt if never settled
    std::map<double, std::optional<double>> settling_times;
    double peak_abs_error = 0.0;
    double final_abs_error = 0.0;
};

ConvergenceMetrics compute_metrics(const Trajectory& traj, double reference,
                                   std::span<const double> thresholds);

/// max |r - y| over the trailing window.
double steady_state_amplitude(const Trajectory& traj, double window, double reference = 0.0);

/// Thresholds at which `candidate` settles strictly earlier than `baseline`
/// (settling at all counts as earlier than never settling).
std::vector<double> thresholds_won(const ConvergenceMetrics& candidate,
                                   const ConvergenceMetrics& baseline);

}  // namespace nlpid
