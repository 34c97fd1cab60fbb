#pragma once

#include "znr/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace znr {

/// Univariate polynomial in eps with exact rational coefficients; index k of
/// coefficients() is the eps^k coefficient. Trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients.
class EpsPolynomial {
public:
    EpsPolynomial() = default;
    explicit EpsPolynomial(std::vector<Rational> coefficients);
    EpsPolynomial(const Rational& constant);
    EpsPolynomial(long constant) : EpsPolynomial(Rational(constant)) {}

    /// a + b eps
    static EpsPolynomial linear(const Rational& a, const Rational& b);

    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    Rational coefficient(std::size_t k) const;

    Rational evaluate(const Rational& eps) const;
    double evaluate(double eps) const;
    EpsPolynomial derivative() const;

    EpsPolynomial& operator+=(const EpsPolynomial& other);
    EpsPolynomial& operator-=(const EpsPolynomial& other);
    friend EpsPolynomial operator+(EpsPolynomial a, const EpsPolynomial& b) { return a += b; }
    friend EpsPolynomial operator-(EpsPolynomial a, const EpsPolynomial& b) { return a -= b; }
    friend EpsPolynomial operator*(const EpsPolynomial& a, const EpsPolynomial& b);

    /// Exact division; throws Validation if a nonzero remainder is left.
    friend EpsPolynomial divide_exact(const EpsPolynomial& a, const EpsPolynomial& b);

    friend bool operator==(const EpsPolynomial&, const EpsPolynomial&) = default;

    /// Human-readable form, e.g. "2/3 e - 1/3 e^2".
    std::string to_text() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Index of the lowest nonzero coefficient; throws ZeroPolynomial.
std::size_t min_degree(const EpsPolynomial& poly);

} // namespace znr
