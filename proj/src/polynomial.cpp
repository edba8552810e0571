#include "nlpid/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nlpid {

namespace {

std::vector<double> normalize(std::vector<double> coeffs) {
    for (double c : coeffs) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("polynomial coefficient is not finite");
        }
    }
    auto first = std::find_if(coeffs.begin(), coeffs.end(), [](double c) { return c != 0.0; });
    if (first == coeffs.end()) {
        return {0.0};
    }
    coeffs.erase(coeffs.begin(), first);
    if (coeffs.size() - 1 > Polynomial::kMaxDegree) {
        throw std::invalid_argument("polynomial degree " + std::to_string(coeffs.size() - 1) +
                                    " exceeds cap of " + std::to_string(Polynomial::kMaxDegree));
    }
    return coeffs;
}

}  // namespace

Polynomial::Polynomial() : coeffs_{0.0} {}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(normalize(std::move(coeffs))) {}

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : Polynomial(std::vector<double>(coeffs)) {}

Complex Polynomial::operator()(Complex s) const {
    Complex acc{0.0, 0.0};
    for (double c : coeffs_) {
        acc = acc * s + c;
    }
    return acc;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (double c : coeffs_) {
        acc = acc * x + c;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    const std::size_t n = degree();
    if (n == 0) {
        return Polynomial{};
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = coeffs_[i] * static_cast<double>(n - i);
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    std::vector<double> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs) {
    const std::size_t n = std::max(lhs.coeffs_.size(), rhs.coeffs_.size());
    std::vector<double> out(n, 0.0);
    // right-align so constant terms line up
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        out[n - lhs.coeffs_.size() + i] += lhs.coeffs_[i];
    }
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        out[n - rhs.coeffs_.size() + i] += rhs.coeffs_[i];
    }
    return Polynomial(std::move(out));
}

Complex poly_eval_complex(const Polynomial& p, Complex s) { return p(s); }

double normalized_residual(const Polynomial& p, Complex r) {
    const double scale =
        std::abs(p.leading()) * std::pow(std::max(1.0, std::abs(r)), static_cast<double>(p.degree()));
    return std::abs(p(r)) / scale;
}

std::vector<Complex> poly_roots(const Polynomial& p) {
    const std::size_t n = p.degree();
    if (n == 0) {
        throw std::domain_error("no roots");
    }
    const auto c = p.coeffs();
    std::vector<Complex> roots;
    roots.reserve(n);

    if (n == 1) {
        roots.emplace_back(-c[1] / c[0], 0.0);
        return roots;
    }

    // Frobenius companion matrix of the monic polynomial.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                      static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        companion(0, static_cast<Eigen::Index>(j)) = -c[j + 1] / c[0];
    }
    for (std::size_t i = 1; i < n; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("companion eigenvalue iteration did not converge");
    }

    const Polynomial dp = p.derivative();
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        Complex r = solver.eigenvalues()[i];
        const Complex slope = dp(r);
        if (std::abs(slope) > 0.0) {
            const Complex polished = r - p(r) / slope;
            if (std::isfinite(polished.real()) && std::isfinite(polished.imag()) &&
                std::abs(p(polished)) < std::abs(p(r))) {
                r = polished;
            }
        }
        roots.push_back(r);
    }

    // Exact conjugate pairing for real-coefficient input.
    for (auto& r : roots) {
        if (std::abs(r.imag()) <= 1e-14 * std::max(1.0, std::abs(r))) {
            r = {r.real(), 0.0};
        }
    }
    std::sort(roots.begin(), roots.end(), [](Complex lhs, Complex rhs) {
        if (lhs.real() != rhs.real()) {
            return lhs.real() < rhs.real();
        }
        return lhs.imag() < rhs.imag();
    });
    return roots;
}

Polynomial poly_from_roots(std::span<const Complex> roots) {
    std::vector<Complex> acc{Complex{1.0, 0.0}};
    for (Complex r : roots) {
        std::vector<Complex> next(acc.size() + 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i] += acc[i];
            next[i + 1] -= acc[i] * r;
        }
        acc = std::move(next);
    }
    std::vector<double> out(acc.size());
    std::transform(acc.begin(), acc.end(), out.begin(), [](Complex z) { return z.real(); });
    return Polynomial(std::move(out));
}

}  // namespace nlpid
