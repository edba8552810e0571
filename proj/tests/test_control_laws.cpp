#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "nlpid/control_laws.hpp"

namespace nlpid {
namespace {

const ControllerParams kExample = ControllerParams::nl_pid(60.0, 1100.0, 3000.0, 2.0, -10.0);

TEST(ControllerParams, Validation) {
    EXPECT_NO_THROW(kExample.validate());
    EXPECT_NO_THROW(ControllerParams::pd(10.0, 1000.0).validate());
    EXPECT_NO_THROW(ControllerParams::pid(10.0, 1000.0, 5000.0).validate());
    EXPECT_THROW(ControllerParams::pid(0.0, 1.0, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(ControllerParams::pid(1.0, -1.0, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(ControllerParams::pid(1.0, 1.0, -1.0).validate(), std::invalid_argument);
    EXPECT_THROW(ControllerParams::nl_pid(1.0, 1.0, 1.0, -1.0, -1.0).validate(), std::invalid_argument);
    EXPECT_THROW(ControllerParams::nl_pid(1.0, 1.0, 1.0, 1.0, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(ControllerParams::nl_pid(1.0, 1.0, 1.0, 1.0, 0.0).validate(), std::invalid_argument);
}

TEST(OmegaGain, LimitCases) {
    EXPECT_DOUBLE_EQ(omega_gain(kExample, 0.0), 3000.0 * 3.0);
    EXPECT_DOUBLE_EQ(omega_gain(kExample, 1e3), 3000.0);
    EXPECT_DOUBLE_EQ(omega_gain(kExample, -1e3), 3000.0);
    const auto linear = kExample.linear_part();
    for (double err : {-5.0, -1e-3, 0.0, 0.2, 7.0}) {
        EXPECT_EQ(omega_gain(linear, err), 3000.0);
    }
}

TEST(ControlOutput, EquilibriumAndReductions) {
    EXPECT_EQ(control_output(kExample, 0.0, 0.0, {0.0}), 0.0);
    // zero error: full gain c (1 + d) on the integral
    EXPECT_DOUBLE_EQ(control_output(kExample, 0.0, 0.0, {0.25}), 9000.0 * 0.25);
    const auto linear = kExample.linear_part();
    EXPECT_DOUBLE_EQ(control_output(linear, 0.1, -0.2, {0.3}), 60.0 * -0.2 + 1100.0 * 0.1 + 3000.0 * 0.3);
    EXPECT_EQ(control_output(linear, 0.1, -0.2, {0.3}), pid_output(kExample, 0.1, -0.2, {0.3}));
}

TEST(ControlOutput, RegulationFormMatchesOutputFeedback) {
    // with r = 0, eps = -y and the law reads -a ydot - b y - Omega(y) int(y)
    const double y = 0.03;
    const double ydot = -0.4;
    const double int_y = 0.002;
    const double omega = 3000.0 * (1.0 + 2.0 * std::exp(-10.0 * std::abs(y)));
    const double expected = -60.0 * ydot - 1100.0 * y - omega * int_y;
    EXPECT_NEAR(control_output(kExample, -y, -ydot, {-int_y}), expected, 1e-12);
}

TEST(PhiNonlinearity, Values) {
    EXPECT_EQ(phi_nonlinearity(kExample, 0.5, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(phi_nonlinearity(kExample, 0.0, 0.7), 3000.0 * 2.0 * 0.7);
    EXPECT_EQ(phi_nonlinearity(kExample.linear_part(), 0.0, 0.7), 0.0);
}

class ControlLawProperties : public ::testing::Test {
protected:
    ControllerParams random_params() {
        std::uniform_real_distribution<double> gain(0.1, 1e4);
        std::uniform_real_distribution<double> ratio(0.0, 10.0);
        std::uniform_real_distribution<double> expo(-1e3, -1e-3);
        return ControllerParams::nl_pid(gain(rng), gain(rng), gain(rng), ratio(rng), expo(rng));
    }
    std::mt19937_64 rng{29};
};

TEST_F(ControlLawProperties, OmegaWithinSectorBounds) {
    std::normal_distribution<double> err(0.0, 1.0);
    for (int i = 0; i < 100000; ++i) {
        const auto p = random_params();
        const double value = omega_gain(p, err(rng));
        EXPECT_GE(value, p.c);
        EXPECT_LE(value, p.c + p.c * p.d);
    }
}

TEST_F(ControlLawProperties, OmegaNonIncreasingInErrorMagnitude) {
    std::exponential_distribution<double> mag(5.0);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_params();
        std::vector<double> errs(50);
        for (auto& x : errs) x = mag(rng);
        std::sort(errs.begin(), errs.end());
        for (std::size_t k = 1; k < errs.size(); ++k) {
            EXPECT_LE(omega_gain(p, errs[k]), omega_gain(p, errs[k - 1]));
            EXPECT_EQ(omega_gain(p, -errs[k]), omega_gain(p, errs[k]));
        }
    }
}

TEST_F(ControlLawProperties, PhiInSector) {
    std::normal_distribution<double> state(0.0, 3.0);
    for (int i = 0; i < 10000; ++i) {
        const auto p = random_params();
        const double z = state(rng);
        const double phi = phi_nonlinearity(p, state(rng), z);
        EXPECT_GE(phi * z, 0.0);
        EXPECT_LE(std::abs(phi), p.c * p.d * std::abs(z) * (1.0 + 1e-15));
    }
}

TEST_F(ControlLawProperties, NonlinearPartIsPhi) {
    std::normal_distribution<double> state(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const auto p = random_params();
        const double eps = state(rng);
        const double eps_dot = state(rng);
        const ControllerState cs{state(rng)};
        const double extra = control_output(p, eps, eps_dot, cs) - control_output(p.linear_part(), eps, eps_dot, cs);
        const double phi = phi_nonlinearity(p, eps, cs.integral);
        const double scale = std::abs(control_output(p, eps, eps_dot, cs)) + std::abs(phi) + 1.0;
        EXPECT_NEAR(extra, phi, 1e-12 * scale);
    }
}

TEST_F(ControlLawProperties, OmegaLipschitzBound) {
    std::normal_distribution<double> err(0.0, 0.1);
    for (int i = 0; i < 10000; ++i) {
        const auto p = random_params();
        const double x = err(rng);
        const double h = 1e-6;
        const double slope = std::abs(omega_gain(p, x + h) - omega_gain(p, x)) / h;
        const double bound = p.c * p.d * std::abs(p.e);
        const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * p.c * (1.0 + p.d) / h;
        EXPECT_LE(slope, bound + rounding);
    }
}

}  // namespace
}  // namespace nlpid
