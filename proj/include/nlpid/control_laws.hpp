#pragma once

namespace nlpid {

/// Gains of the PD / PID / nonlinear-integral PID family.
///
///   u = a * eps_dot + b * eps + c * (1 + d * exp(e * |eps|)) * integral(eps)
///
/// c = 0 gives PD, d = 0 gives the linear PID.
struct ControllerParams {
    double a = 0.0;  ///< derivative gain, 1/s
    double b = 0.0;  ///< proportional gain, 1/s^2
    double c = 0.0;  ///< integral gain, 1/s^3
    double d = 0.0;  ///< nonlinear gain ratio
    double e = 0.0;  ///< error sensitivity exponent, 1/m

    static ControllerParams pd(double a, double b) { return {a, b, 0.0, 0.0, 0.0}; }
    static ControllerParams pid(double a, double b, double c) { return {a, b, c, 0.0, 0.0}; }
    static ControllerParams nl_pid(double a, double b, double c, double d, double e) {
        return {a, b, c, d, e};
    }

    /// Throws std::invalid_argument on a > 0, b > 0, c >= 0, d >= 0, e <= 0
    /// violations, or on e = 0 with d > 0.
    void validate() const;

    [[nodiscard]] ControllerParams linear_part() const { return {a, b, c, 0.0, 0.0}; }
    [[nodiscard]] bool is_linear() const { return d == 0.0; }
};

struct ControllerState {
    double integral = 0.0;  ///< accumulated integral of the control error, m*s
};

/// Effective integral gain c * (1 + d * exp(e * |err|)), in [c, c + c*d].
double omega_gain(const ControllerParams& p, double err);

/// a * eps_dot + b * eps + omega_gain(p, eps) * integral.
double control_output(const ControllerParams& p, double eps, double eps_dot,
                      const ControllerState& state);

/// Linear PID law a * eps_dot + b * eps + c * integral; ignores d and e.
double pid_output(const ControllerParams& p, double eps, double eps_dot, const ControllerState& state);

/// Sector nonlinearity c * d * exp(e * |x2|) * z, in the sector [0, c*d].
double phi_nonlinearity(const ControllerParams& p, double x2, double z);

}  // namespace nlpid
