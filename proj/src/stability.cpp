#include "nlpid/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlpid/grid.hpp"

namespace nlpid {

namespace {

StabilityVerdict make_verdict(double margin, std::optional<double> witness) {
    StabilityVerdict v;
    v.margin = margin;
    v.witness_omega = witness;
    v.marginal = std::abs(margin) <= kMarginalBand;
    v.stable = margin > 0.0 && !v.marginal;
    if (v.marginal) {
        v.note = "marginal";
    }
    return v;
}

}  // namespace

StabilityVerdict routh_hurwitz_3rd(double a, double b, double c) {
    const double hurwitz = a * b - c;
    double margin = hurwitz;
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
        margin = std::min({a, b, c, hurwitz});
    }
    return make_verdict(margin, std::nullopt);
}

Polynomial circle_polynomial(double a, double b, double c, double d) {
    return Polynomial{1.0, a * a - 2.0 * b, b * b - 2.0 * a * c - a * c * d, c * c * (1.0 + d)};
}

StabilityVerdict circle_exact(double a, double b, double c, double d) {
    if (!routh_hurwitz_3rd(a, b, c).stable) {
        throw std::domain_error("linear loop not Hurwitz");
    }
    if (!(d >= 0.0)) {
        throw std::invalid_argument("nonlinear gain ratio d must be non-negative");
    }
    const Polynomial p = circle_polynomial(a, b, c, d);
    const auto coef = p.coeffs();
    const double p2 = coef[1];
    const double p1 = coef[2];
    const double p0 = coef[3];

    // P is a monic cubic, so on [0, inf) its minimum is at x = 0 or at the
    // local minimum 3x^2 + 2 p2 x + p1 = 0 (larger critical point).
    double x_min = 0.0;
    double p_min = p0;
    const double disc = p2 * p2 - 3.0 * p1;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double x_star = p2 > 0.0 ? -p1 / (p2 + sq) : (-p2 + sq) / 3.0;
        if (x_star > 0.0) {
            const double value = p(x_star);
            if (value < p_min) {
                p_min = value;
                x_min = x_star;
            }
        }
    }
    StabilityVerdict v = make_verdict(p_min / p0, std::sqrt(x_min));
    if (d == 0.0) {
        v.note = "sector vanishes";
    }
    return v;
}

std::vector<double> default_circle_grid() { return log_space(1e-3, 1e6, 4000); }

StabilityVerdict circle_sweep(const RationalTF& h, double k, std::span<const double> omega_grid) {
    if (!(k >= 0.0)) {
        throw std::invalid_argument("sector bound k must be non-negative");
    }
    if (omega_grid.empty()) {
        throw std::invalid_argument("empty frequency grid");
    }
    if (!is_hurwitz(h.den())) {
        throw std::domain_error("assumption (ii) violated");
    }
    auto criterion = [&](double omega) { return 1.0 + k * tf_eval(h, omega).real(); };

    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        const double value = criterion(omega_grid[i]);
        if (value < best_value) {
            best_value = value;
            best = i;
        }
    }
    double witness = omega_grid[best];
    if (omega_grid.size() > 1) {
        const double lo = omega_grid[best == 0 ? 0 : best - 1];
        const double hi = omega_grid[std::min(best + 1, omega_grid.size() - 1)];
        const double refined = golden_section_min(criterion, lo, hi, 40);
        const double refined_value = criterion(refined);
        if (refined_value < best_value) {
            best_value = refined_value;
            witness = refined;
        }
    }
    StabilityVerdict v = make_verdict(best_value, std::abs(witness));
    if (k == 0.0) {
        v.note = "sector vanishes";
    }
    return v;
}

StabilityVerdict circle_extended(double a, double b, double c, double d, const ActuatorSpec& act,
                                 std::span<const double> omega_grid) {
    if (!act.present) {
        throw std::invalid_argument("circle_extended requires an actuator");
    }
    return circle_sweep(build_lure_loop_tf(a, b, c, act), c * d, omega_grid);
}

PlacementGains pole_placement_gains(double lambda1, double lambda2) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
        throw std::invalid_argument("decay rates lambda1, lambda2 must be positive");
    }
    return {2.0 * lambda1 + lambda2, lambda1 * lambda1 + 2.0 * lambda1 * lambda2,
            lambda1 * lambda1 * lambda2};
}

}  // namespace nlpid
