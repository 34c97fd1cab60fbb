#pragma once

#include "znr/error.hpp"
#include "znr/matrix.hpp"
#include "znr/rational.hpp"

#include <cmath>
#include <concepts>
#include <vector>

namespace znr {

/// Solves A X = B for X (B may hold several right-hand sides). Exact
/// elimination for Rational; partial pivoting for double. Throws
/// SingularSystem when A is singular.
template <Scalar T>
Matrix<T> solve(Matrix<T> a, Matrix<T> b)
{
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) {
        fail(ErrorKind::validation, "solve: dimension mismatch");
    }
    const std::size_t rhs = b.cols();
    double scale = 0.0;
    if constexpr (!scalar_traits<T>::exact) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                scale = std::max(scale, std::abs(a(i, j)));
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        if constexpr (scalar_traits<T>::exact) {
            while (pivot < n && a(pivot, k) == 0) {
                ++pivot;
            }
            if (pivot == n) {
                fail(ErrorKind::singular_system, "matrix is singular");
            }
        } else {
            for (std::size_t i = k + 1; i < n; ++i) {
                if (std::abs(a(i, k)) > std::abs(a(pivot, k))) {
                    pivot = i;
                }
            }
            if (std::abs(a(pivot, k)) <= scale * 1e-14 || a(pivot, k) == 0.0) {
                fail(ErrorKind::singular_system, "matrix is numerically singular");
            }
        }
        a.swap_rows(k, pivot);
        b.swap_rows(k, pivot);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) {
                continue;
            }
            const T factor = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) {
                a(i, j) -= factor * a(k, j);
            }
            for (std::size_t j = 0; j < rhs; ++j) {
                b(i, j) -= factor * b(k, j);
            }
        }
    }
    Matrix<T> x(n, rhs, T(0));
    for (std::size_t c = 0; c < rhs; ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            T acc = b(ii, c);
            for (std::size_t j = ii + 1; j < n; ++j) {
                acc -= a(ii, j) * x(j, c);
            }
            x(ii, c) = acc / a(ii, ii);
        }
    }
    return x;
}

template <Scalar T>
std::vector<T> solve(const Matrix<T>& a, const std::vector<T>& b)
{
    Matrix<T> rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) {
        rhs(i, 0) = b[i];
    }
    Matrix<T> x = solve(a, std::move(rhs));
    std::vector<T> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] = x(i, 0);
    }
    return out;
}

/// Fraction-free (Bareiss) determinant over an integral domain. `divide`
/// must perform exact division; `is_zero` detects zero pivots.
template <class T, class IsZero, class Divide>
T bareiss_determinant(Matrix<T> m, IsZero is_zero, Divide divide)
{
    const std::size_t n = m.rows();
    if (n == 0) {
        return T(1);
    }
    bool negate = false;
    T previous(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m(k, k))) {
            std::size_t swap = k + 1;
            while (swap < n && is_zero(m(swap, k))) {
                ++swap;
            }
            if (swap == n) {
                return T(0);
            }
            m.swap_rows(k, swap);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = divide(m(k, k) * m(i, j) - m(i, k) * m(k, j), previous);
            }
        }
        previous = m(k, k);
    }
    T det = m(n - 1, n - 1);
    return negate ? T(T(0) - det) : det;
}

/// Exact determinant: rows are scaled to integers, eliminated fraction-free,
/// then the scaling is undone.
Rational determinant(const Matrix<Rational>& m);

/// Partial-pivot LU determinant.
double determinant(const Matrix<double>& m);

} // namespace znr
