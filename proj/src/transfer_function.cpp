#include "nlpid/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlpid {

RationalTF::RationalTF(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) {
        throw std::invalid_argument("transfer function denominator is identically zero");
    }
}

Complex RationalTF::operator()(Complex s) const { return num_(s) / den_(s); }

ActuatorSpec ActuatorSpec::first_order(double kappa, double mu) {
    ActuatorSpec spec{kappa, mu, true};
    spec.validate();
    return spec;
}

void ActuatorSpec::validate() const {
    if (!present) {
        return;
    }
    if (!std::isfinite(kappa) || !std::isfinite(mu)) {
        throw std::invalid_argument("actuator parameters must be finite");
    }
    if (!(mu > 0.0)) {
        throw std::invalid_argument("actuator time constant mu must be positive");
    }
    if (kappa == 0.0) {
        throw std::invalid_argument("actuator gain kappa must be nonzero");
    }
}

RationalTF ActuatorSpec::transfer() const {
    if (!present) {
        return {Polynomial{1.0}, Polynomial{1.0}};
    }
    return {Polynomial{kappa}, Polynomial{mu, 1.0}};
}

Complex tf_eval(const RationalTF& h, double omega) {
    const Complex s{0.0, omega};
    const Complex den = h.den()(s);
    double scale = 0.0;
    double power = 1.0;
    const auto c = h.den().coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        scale += std::abs(*it) * power;
        power *= std::abs(omega);
    }
    if (std::abs(den) <= 1e-12 * std::max(1.0, scale)) {
        throw std::domain_error("evaluation at pole");
    }
    return h.num()(s) / den;
}

RationalTF build_loop_tf(double a, double b, double c, const ActuatorSpec& actuator) {
    actuator.validate();
    Polynomial den{1.0, a, b, c};
    if (!actuator.present) {
        return {Polynomial{1.0}, den};
    }
    return {Polynomial{actuator.kappa}, Polynomial{actuator.mu, 1.0} * den};
}

RationalTF build_lure_loop_tf(double a, double b, double c, const ActuatorSpec& actuator) {
    actuator.validate();
    if (!actuator.present) {
        return build_loop_tf(a, b, c, actuator);
    }
    const double k = actuator.kappa;
    return {Polynomial{k}, Polynomial{actuator.mu, 1.0, k * a, k * b, k * c}};
}

RationalTF build_sensitivity_tf(double a, double b, double omega_gain) {
    return {Polynomial{1.0, 0.0}, Polynomial{1.0, a, b, omega_gain}};
}

bool is_hurwitz(const Polynomial& p) {
    if (p.degree() == 0) {
        return true;
    }
    const auto roots = poly_roots(p);
    return std::all_of(roots.begin(), roots.end(), [](Complex r) { return r.real() < 0.0; });
}

}  // namespace nlpid
