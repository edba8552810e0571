#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nlpid {

/// n points log-spaced over [lo, hi], endpoints included.
inline std::vector<double> log_space(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        throw std::invalid_argument("log_space needs 0 < lo < hi and n >= 2");
    }
    std::vector<double> out(n);
    const double l0 = std::log10(lo);
    const double step = (std::log10(hi) - l0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::pow(10.0, l0 + step * static_cast<double>(i));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

/// Golden-section minimisation of f on [lo, hi]; returns the abscissa.
template <typename F>
double golden_section_min(F&& f, double lo, double hi, int iterations) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iterations; ++i) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

}  // namespace nlpid
