#pragma once

#include <span>
#include <vector>

namespace nlpid {

/// Tabulated |S(jw)|; omegas strictly increasing and positive.
struct FrequencyResponse {
    std::vector<double> omegas;
    std::vector<double> magnitudes;
};

/// |S(jw)| = w / sqrt((b w - w^3)^2 + (Omega - a w^2)^2).
double sensitivity_magnitude(double a, double b, double omega_gain, double omega);

FrequencyResponse sensitivity_response(double a, double b, double omega_gain,
                                       std::span<const double> omegas);

struct SensitivityPeak {
    double omega_peak = 0.0;
    double peak_value = 0.0;
};

/// Maximiser of |S(jw)| over w > 0: 2000-point log scan of [1e-2, 10 sqrt(b)]
/// then golden-section refinement to 1e-10 relative in w. Throws
/// std::domain_error if (a, b, Omega) is not Hurwitz.
SensitivityPeak peak_sensitivity(double a, double b, double omega_gain);

/// Unit-step disturbance response of the loop with poles {-l1 (double), -l2}:
///   G (exp(-l2 t) - (1 - (l2 - l1) t) exp(-l1 t)),  G = (l1 - l2)^-2.
/// Throws std::domain_error("degenerate pole configuration") if l1 = l2 to
/// within 1e-9 relative.
double step_response_closed_form(double lambda1, double lambda2, double t);

/// The same response parameterised by the integral gain, l2 = Omega / l1^2.
/// Throws std::domain_error("degenerate") if Omega = l1^3 to within 1e-9
/// relative.
double step_response_omega_form(double lambda1, double omega_gain, double t);

/// Triple-pole response t^2/2 exp(-l t), the Omega -> l1^3 limit of the two
/// forms above.
double step_response_confluent(double lambda1, double t);

struct TransientPeak {
    double t_peak = 0.0;
    double peak = 0.0;  ///< max_t |y(t)|
};

/// max_t |y(t)| of the omega form on a uniform grid dt over [0, 20/min(l1, l2)].
/// At the degenerate point Omega = l1^3 the confluent limit is used.
TransientPeak transient_peak(double lambda1, double omega_gain, double dt = 1e-4);

}  // namespace nlpid
