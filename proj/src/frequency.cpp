#include "nlpid/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlpid/grid.hpp"
#include "nlpid/stability.hpp"

namespace nlpid {

namespace {

bool nearly_equal(double x, double y) {
    return std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y));
}

}  // namespace

double sensitivity_magnitude(double a, double b, double omega_gain, double omega) {
    const double w2 = omega * omega;
    const double im = b * omega - w2 * omega;
    const double re = omega_gain - a * w2;
    return std::abs(omega) / std::hypot(im, re);
}

FrequencyResponse sensitivity_response(double a, double b, double omega_gain,
                                       std::span<const double> omegas) {
    FrequencyResponse out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.magnitudes.reserve(omegas.size());
    for (double w : omegas) {
        out.magnitudes.push_back(sensitivity_magnitude(a, b, omega_gain, w));
    }
    return out;
}

SensitivityPeak peak_sensitivity(double a, double b, double omega_gain) {
    if (!routh_hurwitz_3rd(a, b, omega_gain).stable) {
        throw std::domain_error("sensitivity loop not Hurwitz");
    }
    const auto grid = log_space(1e-2, 10.0 * std::sqrt(b), 2000);
    std::size_t best = 0;
    double best_value = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double m = sensitivity_magnitude(a, b, omega_gain, grid[i]);
        if (m > best_value) {
            best_value = m;
            best = i;
        }
    }
    double lo = grid[best == 0 ? 0 : best - 1];
    double hi = grid[std::min(best + 1, grid.size() - 1)];
    auto negated = [&](double w) { return -sensitivity_magnitude(a, b, omega_gain, w); };
    // each golden step shrinks the bracket by 0.618; iterate until 1e-10 relative
    int iterations = 0;
    for (double width = (hi - lo) / lo; width > 1e-10 && iterations < 200; width *= 0.618034) {
        ++iterations;
    }
    const double w_peak = golden_section_min(negated, lo, hi, iterations);
    const double peak = sensitivity_magnitude(a, b, omega_gain, w_peak);
    if (peak < best_value) {
        return {grid[best], best_value};
    }
    return {w_peak, peak};
}

double step_response_closed_form(double lambda1, double lambda2, double t) {
    if (nearly_equal(lambda1, lambda2)) {
        throw std::domain_error("degenerate pole configuration");
    }
    const double diff = lambda1 - lambda2;
    const double gamma = 1.0 / (diff * diff);
    return gamma * (std::exp(-lambda2 * t) - (1.0 - (lambda2 - lambda1) * t) * std::exp(-lambda1 * t));
}

double step_response_omega_form(double lambda1, double omega_gain, double t) {
    const double l1_sq = lambda1 * lambda1;
    const double l1_cube = l1_sq * lambda1;
    if (nearly_equal(omega_gain, l1_cube)) {
        throw std::domain_error("degenerate");
    }
    const double gap = l1_cube - omega_gain;
    const double gamma_hat = l1_sq * l1_sq / (gap * gap);
    return gamma_hat * (std::exp(-(omega_gain / l1_sq) * t) -
                        (1.0 - ((omega_gain - l1_cube) / l1_sq) * t) * std::exp(-lambda1 * t));
}

double step_response_confluent(double lambda1, double t) {
    return 0.5 * t * t * std::exp(-lambda1 * t);
}

TransientPeak transient_peak(double lambda1, double omega_gain, double dt) {
    if (!(lambda1 > 0.0) || !(omega_gain > 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("transient_peak needs positive lambda1, Omega and dt");
    }
    const double lambda2 = omega_gain / (lambda1 * lambda1);
    const bool confluent = nearly_equal(omega_gain, lambda1 * lambda1 * lambda1);
    const double horizon = 20.0 / std::min(lambda1, lambda2);
    const auto steps = static_cast<long long>(std::floor(horizon / dt));
    TransientPeak best;
    for (long long i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double y = confluent ? step_response_confluent(lambda1, t)
                                   : step_response_omega_form(lambda1, omega_gain, t);
        if (std::abs(y) > best.peak) {
            best = {t, std::abs(y)};
        }
    }
    return best;
}

}  // namespace nlpid
