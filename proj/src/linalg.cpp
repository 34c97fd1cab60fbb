#include "znr/linalg.hpp"

#include <boost/integer/common_factor.hpp>

namespace znr {

Rational determinant(const Matrix<Rational>& m)
{
    const std::size_t n = m.rows();
    if (m.cols() != n) {
        fail(ErrorKind::validation, "determinant of a non-square matrix");
    }
    Matrix<Integer> scaled(n, n);
    Rational scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer lcm = 1;
        for (std::size_t j = 0; j < n; ++j) {
            lcm = boost::multiprecision::lcm(lcm, Integer(denominator(m(i, j))));
        }
        for (std::size_t j = 0; j < n; ++j) {
            scaled(i, j) = numerator(m(i, j)) * (lcm / denominator(m(i, j)));
        }
        scale *= Rational(lcm);
    }
    Integer det = bareiss_determinant(
        std::move(scaled), [](const Integer& x) { return x == 0; },
        [](const Integer& a, const Integer& b) { return Integer(a / b); });
    return Rational(det) / scale;
}

double determinant(const Matrix<double>& input)
{
    Matrix<double> m = input;
    const std::size_t n = m.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(m(i, k)) > std::abs(m(pivot, k))) {
                pivot = i;
            }
        }
        if (m(pivot, k) == 0.0) {
            return 0.0;
        }
        if (pivot != k) {
            m.swap_rows(k, pivot);
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) {
                m(i, j) -= f * m(k, j);
            }
        }
    }
    return det;
}

} // namespace znr
