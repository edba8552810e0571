#pragma once

#include "nlpid/polynomial.hpp"

namespace nlpid {

/// Ratio of two real polynomials.
class RationalTF {
public:
    RationalTF(Polynomial num, Polynomial den);

    [[nodiscard]] const Polynomial& num() const { return num_; }
    [[nodiscard]] const Polynomial& den() const { return den_; }
    [[nodiscard]] bool is_proper() const { return num_.degree() <= den_.degree(); }
    [[nodiscard]] bool is_strictly_proper() const {
        return num_.is_zero() || num_.degree() < den_.degree();
    }

    [[nodiscard]] Complex operator()(Complex s) const;

private:
    Polynomial num_;
    Polynomial den_;
};

/// First-order actuator lag v(s) = kappa / (mu s + 1) u(s).
struct ActuatorSpec {
    double kappa = 1.0;
    double mu = 0.0;
    bool present = false;

    static ActuatorSpec none() { return {}; }
    /// Throws std::invalid_argument unless mu > 0 and kappa != 0.
    static ActuatorSpec first_order(double kappa, double mu);

    void validate() const;
    [[nodiscard]] RationalTF transfer() const;
};

/// h(j omega). Throws std::domain_error("evaluation at pole") when the
/// denominator vanishes to within 1e-12 of its coefficient scale.
Complex tf_eval(const RationalTF& h, double omega);

/// 1 / (s^3 + a s^2 + b s + c), times kappa / (mu s + 1) when the actuator is
/// present.
RationalTF build_loop_tf(double a, double b, double c, const ActuatorSpec& actuator);

/// Transfer function from -phi to the integral state z for the closed
/// PID loop including the actuator:
///   kappa / (mu s^4 + s^3 + kappa a s^2 + kappa b s + kappa c).
/// Identical to build_loop_tf without an actuator.
RationalTF build_lure_loop_tf(double a, double b, double c, const ActuatorSpec& actuator);

/// s / (s^3 + a s^2 + b s + Omega), i.e. G / (1 + C G) with G = 1/s^2 and
/// C = (a s^2 + b s + Omega) / s.
RationalTF build_sensitivity_tf(double a, double b, double omega_gain);

/// True when every root of p has strictly negative real part.
bool is_hurwitz(const Polynomial& p);

}  // namespace nlpid
