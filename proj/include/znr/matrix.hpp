#pragma once

#include "znr/rational.hpp"

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace znr {

/// Dense row-major matrix over an arbitrary scalar ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j)
    {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const T& operator()(std::size_t i, std::size_t j) const
    {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) {
            return;
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            std::swap((*this)(a, j), (*this)(b, j));
        }
    }

    /// Submatrix keeping the listed rows and columns, in the order given.
    Matrix select(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const
    {
        Matrix out(row_ids.size(), col_ids.size());
        for (std::size_t a = 0; a < row_ids.size(); ++a) {
            for (std::size_t b = 0; b < col_ids.size(); ++b) {
                out(a, b) = (*this)(row_ids[a], col_ids[b]);
            }
        }
        return out;
    }

    Matrix transposed() const
    {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out(j, i) = (*this)(i, j);
            }
        }
        return out;
    }

    template <class U, class F>
    Matrix<U> map(F&& f) const
    {
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out(i, j) = f((*this)(i, j));
            }
        }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Row vector times matrix.
template <class T>
std::vector<T> left_multiply(std::span<const T> x, const Matrix<T>& m)
{
    assert(x.size() == m.rows());
    std::vector<T> out(m.cols(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (scalar_traits<T>::is_zero(x[i]) && scalar_traits<T>::exact) {
            continue;
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[j] += x[i] * m(i, j);
        }
    }
    return out;
}

} // namespace znr
