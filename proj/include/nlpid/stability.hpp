#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlpid/transfer_function.hpp"

namespace nlpid {

/// Margins within this band of zero are reported as marginal and unstable,
/// since every certificate here is a strict inequality.
inline constexpr double kMarginalBand = 1e-9;

struct StabilityVerdict {
    bool stable = false;
    /// Worst-case value of the tested quantity minus its bound.
    double margin = 0.0;
    std::optional<double> witness_omega;
    bool marginal = false;
    std::string note;
};

/// Routh-Hurwitz test of s^3 + a s^2 + b s + c: stable iff a, b, c > 0 and
/// ab - c > 0. The margin is ab - c when the sign conditions hold, otherwise
/// the most negative of (a, b, c, ab - c).
StabilityVerdict routh_hurwitz_3rd(double a, double b, double c);

/// Coefficients (highest first) of
///   P(x) = x^3 + (a^2 - 2b) x^2 + (b^2 - 2ac - acd) x + c^2 (1 + d),
/// the circle inequality 1 + cd Re H(jw) > 0 for H = 1/(s^3+as^2+bs+c) with
/// the positive denominator |den(jw)|^2 cleared and x = w^2.
Polynomial circle_polynomial(double a, double b, double c, double d);

/// Closed-form circle criterion for the sector [0, c d]: stable iff P(x) > 0
/// on x >= 0. Margin is min_{x>=0} P(x) / P(0); witness is sqrt(argmin).
/// Throws std::domain_error("linear loop not Hurwitz") if ab - c <= 0 or a
/// gain is non-positive, std::invalid_argument if d < 0.
StabilityVerdict circle_exact(double a, double b, double c, double d);

/// Log grid used by the sweep checks: 4000 points over [1e-3, 1e6] rad/s.
std::vector<double> default_circle_grid();

/// Frequency-sweep circle criterion min_w Re[1 + k h(jw)] > 0 with
/// golden-section refinement around the grid minimum.
/// Throws std::domain_error("assumption (ii) violated") if the denominator of
/// h is not Hurwitz, std::invalid_argument for k < 0 or an empty grid.
StabilityVerdict circle_sweep(const RationalTF& h, double k, std::span<const double> omega_grid);

/// Circle criterion for the loop extended by the actuator lag, sector
/// [0, c d]. Uses the closed-loop linear part from build_lure_loop_tf.
StabilityVerdict circle_extended(double a, double b, double c, double d, const ActuatorSpec& act,
                                 std::span<const double> omega_grid);

struct PlacementGains {
    double a = 0.0;
    double b = 0.0;
    double omega = 0.0;
};

/// Gains placing a double pole at -lambda1 and a pole at -lambda2:
/// a = 2 l1 + l2, b = l1^2 + 2 l1 l2, Omega = l1^2 l2. Decay rates must be
/// positive.
PlacementGains pole_placement_gains(double lambda1, double lambda2);

}  // namespace nlpid
