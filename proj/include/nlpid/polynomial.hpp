#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nlpid {

using Complex = std::complex<double>;

/// Dense real polynomial, coefficients stored highest degree first.
///
/// Leading zeros are stripped on construction, so the leading coefficient is
/// nonzero unless the polynomial is identically zero. Non-finite
/// coefficients and degrees above kMaxDegree are rejected.
class Polynomial {
public:
    static constexpr std::size_t kMaxDegree = 16;

    Polynomial();
    explicit Polynomial(std::vector<double> coeffs);
    Polynomial(std::initializer_list<double> coeffs);

    [[nodiscard]] std::size_t degree() const { return coeffs_.size() - 1; }
    [[nodiscard]] std::span<const double> coeffs() const { return coeffs_; }
    [[nodiscard]] double leading() const { return coeffs_.front(); }
    [[nodiscard]] double constant_term() const { return coeffs_.back(); }
    [[nodiscard]] bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

    /// Horner evaluation.
    [[nodiscard]] Complex operator()(Complex s) const;
    [[nodiscard]] double operator()(double x) const;

    [[nodiscard]] Polynomial derivative() const;

    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    friend Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs);
    friend bool operator==(const Polynomial& lhs, const Polynomial& rhs) = default;

private:
    std::vector<double> coeffs_;
};

Complex poly_eval_complex(const Polynomial& p, Complex s);

/// All complex roots with multiplicity, sorted by (real, imag).
///
/// Eigenvalues of the companion matrix, each refined by one Newton step when
/// that lowers the residual. Throws std::domain_error("no roots") for
/// degree-0 input.
std::vector<Complex> poly_roots(const Polynomial& p);

/// |p(r)| / (|lead| * max(1,|r|)^deg), the scale-free residual used to
/// accept a root.
double normalized_residual(const Polynomial& p, Complex r);

/// Monic polynomial with the given roots; complex roots must come in
/// conjugate pairs (imaginary residue is dropped).
Polynomial poly_from_roots(std::span<const Complex> roots);

}  // namespace nlpid
