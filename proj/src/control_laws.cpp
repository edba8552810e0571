#include "nlpid/control_laws.hpp"

#include <cmath>
#include <stdexcept>

namespace nlpid {

void ControllerParams::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d) ||
        !std::isfinite(e)) {
        throw std::invalid_argument("controller gains must be finite");
    }
    if (!(a > 0.0)) {
        throw std::invalid_argument("derivative gain a must be positive");
    }
    if (!(b > 0.0)) {
        throw std::invalid_argument("proportional gain b must be positive");
    }
    if (c < 0.0) {
        throw std::invalid_argument("integral gain c must be non-negative");
    }
    if (d < 0.0) {
        throw std::invalid_argument("nonlinear gain ratio d must be non-negative");
    }
    if (e > 0.0) {
        throw std::invalid_argument("exponent e must be non-positive");
    }
    if (e == 0.0 && d != 0.0) {
        throw std::invalid_argument("exponent e = 0 is only allowed with d = 0");
    }
}

double omega_gain(const ControllerParams& p, double err) {
    return p.c * (1.0 + p.d * std::exp(p.e * std::abs(err)));
}

double control_output(const ControllerParams& p, double eps, double eps_dot,
                      const ControllerState& state) {
    return p.a * eps_dot + p.b * eps + omega_gain(p, eps) * state.integral;
}

double pid_output(const ControllerParams& p, double eps, double eps_dot, const ControllerState& state) {
    return p.a * eps_dot + p.b * eps + p.c * state.integral;
}

double phi_nonlinearity(const ControllerParams& p, double x2, double z) {
    return p.c * p.d * std::exp(p.e * std::abs(x2)) * z;
}

}  // namespace nlpid
