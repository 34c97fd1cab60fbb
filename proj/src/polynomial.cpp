#include "znr/polynomial.hpp"

#include "znr/error.hpp"

#include <algorithm>

namespace znr {

EpsPolynomial::EpsPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients))
{
    trim();
}

EpsPolynomial::EpsPolynomial(const Rational& constant)
{
    if (constant != 0) {
        coeffs_.push_back(constant);
    }
}

EpsPolynomial EpsPolynomial::linear(const Rational& a, const Rational& b)
{
    return EpsPolynomial(std::vector<Rational>{a, b});
}

void EpsPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

Rational EpsPolynomial::coefficient(std::size_t k) const
{
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational EpsPolynomial::evaluate(const Rational& eps) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * eps + *it;
    }
    return acc;
}

double EpsPolynomial::evaluate(double eps) const
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * eps + to_double(*it);
    }
    return acc;
}

EpsPolynomial EpsPolynomial::derivative() const
{
    std::vector<Rational> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d.push_back(coeffs_[k] * static_cast<long>(k));
    }
    return EpsPolynomial(std::move(d));
}

EpsPolynomial& EpsPolynomial::operator+=(const EpsPolynomial& other)
{
    if (other.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(other.coeffs_.size(), Rational(0));
    }
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) {
        coeffs_[k] += other.coeffs_[k];
    }
    trim();
    return *this;
}

EpsPolynomial& EpsPolynomial::operator-=(const EpsPolynomial& other)
{
    if (other.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(other.coeffs_.size(), Rational(0));
    }
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) {
        coeffs_[k] -= other.coeffs_[k];
    }
    trim();
    return *this;
}

EpsPolynomial operator*(const EpsPolynomial& a, const EpsPolynomial& b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return EpsPolynomial(std::move(out));
}

EpsPolynomial divide_exact(const EpsPolynomial& a, const EpsPolynomial& b)
{
    if (b.is_zero()) {
        fail(ErrorKind::zero_polynomial, "division by the zero polynomial");
    }
    if (a.is_zero()) {
        return {};
    }
    if (a.degree() < b.degree()) {
        fail(ErrorKind::validation, "inexact polynomial division");
    }
    std::vector<Rational> rem = a.coeffs_;
    const std::size_t db = b.coeffs_.size() - 1;
    std::vector<Rational> quot(rem.size() - db, Rational(0));
    const Rational& lead = b.coeffs_.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        Rational c = rem[k + db] / lead;
        quot[k] = c;
        if (c == 0) {
            continue;
        }
        for (std::size_t j = 0; j <= db; ++j) {
            rem[k + j] -= c * b.coeffs_[j];
        }
    }
    for (const auto& r : rem) {
        if (r != 0) {
            fail(ErrorKind::validation, "inexact polynomial division");
        }
    }
    return EpsPolynomial(std::move(quot));
}

std::string EpsPolynomial::to_text() const
{
    if (coeffs_.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Rational& c = coeffs_[k];
        if (c == 0) {
            continue;
        }
        Rational mag = c < 0 ? Rational(-c) : c;
        if (out.empty()) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string m = denominator(mag) == 1 ? numerator(mag).str() : to_string(mag);
        if (k == 0) {
            out += m;
        } else {
            if (mag != 1) {
                out += m + " ";
            }
            out += k == 1 ? "e" : "e^" + std::to_string(k);
        }
    }
    return out;
}

std::size_t min_degree(const EpsPolynomial& poly)
{
    const auto& c = poly.coefficients();
    auto it = std::find_if(c.begin(), c.end(), [](const Rational& x) { return x != 0; });
    if (it == c.end()) {
        fail(ErrorKind::zero_polynomial, "min_degree of the zero polynomial");
    }
    return static_cast<std::size_t>(it - c.begin());
}

} // namespace znr
