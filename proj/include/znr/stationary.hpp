#pragma once

#include "znr/classify.hpp"
#include "znr/linalg.hpp"
#include "znr/stochastic.hpp"

#include <cmath>
#include <vector>

namespace znr {

/// Probability vector: entries >= 0 summing to one (exactly, or within
/// floating_sum_tolerance).
template <Scalar T>
class Distribution {
public:
    explicit Distribution(std::vector<T> values) : values_(std::move(values))
    {
        T sum(0);
        for (const auto& v : values_) {
            if (v < 0) {
                fail(ErrorKind::validation, "distribution has a negative entry");
            }
            sum += v;
        }
        if (!scalar_traits<T>::sums_to_one(sum)) {
            fail(ErrorKind::validation, "distribution does not sum to 1");
        }
    }

    /// Normalises nonnegative weights; the total must be positive.
    static Distribution normalized(std::vector<T> weights)
    {
        T total(0);
        for (auto& w : weights) {
            if constexpr (!scalar_traits<T>::exact) {
                if (w < 0 && w > -1e-13) {
                    w = 0;
                }
            }
            total += w;
        }
        if (!(total > 0)) {
            fail(ErrorKind::validation, "cannot normalise weights with zero total");
        }
        for (auto& w : weights) {
            w /= total;
        }
        return Distribution(std::move(weights));
    }

    std::size_t size() const noexcept { return values_.size(); }
    const T& operator[](std::size_t i) const { return values_[i]; }
    const std::vector<T>& values() const noexcept { return values_; }
    std::span<const T> span() const noexcept { return values_; }

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::vector<T> values_;
};

template <Scalar T>
void require_irreducible(const StochasticMatrix<T>& p, const char* what)
{
    if (!is_irreducible(p)) {
        fail(ErrorKind::not_irreducible, std::string(what) + ": chain is not irreducible");
    }
}

/// Unique stationary law of an irreducible chain: solves pi (P - I) = 0 with
/// the last balance equation replaced by sum(pi) = 1.
template <Scalar T>
Distribution<T> stationary_direct(const StochasticMatrix<T>& p)
{
    require_irreducible(p, "stationary_direct");
    const std::size_t n = p.size();
    Matrix<T> a(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = p(j, i);
        }
        a(i, i) -= T(1);
    }
    for (std::size_t j = 0; j < n; ++j) {
        a(n - 1, j) = T(1);
    }
    std::vector<T> b(n, T(0));
    b[n - 1] = T(1);
    std::vector<T> pi = solve(a, b);
    if constexpr (scalar_traits<T>::exact) {
        return Distribution<T>(std::move(pi));
    } else {
        return Distribution<T>::normalized(std::move(pi));
    }
}

/// Power iteration on the lazy kernel (P + I)/2, i.e. each step averages the
/// current iterate with its image. This shares P's stationary law and is
/// aperiodic, so periodic chains converge geometrically. Stops once
/// ||x P - x||_1 <= tol.
Distribution<double> stationary_power(const FloatMatrix& p, double tol, std::size_t max_iter);

/// Stationary law of P restricted to each closed class, embedded with zeros.
template <Scalar T>
std::vector<Distribution<T>> class_stationary(const StochasticMatrix<T>& p, const ClassPartition& part)
{
    std::vector<Distribution<T>> out;
    out.reserve(part.m());
    for (const auto& cls : part.closed_classes) {
        Distribution<T> local = stationary_direct(restrict_to(p, cls));
        std::vector<T> full(p.size(), T(0));
        for (std::size_t a = 0; a < cls.size(); ++a) {
            full[cls[a]] = local[a];
        }
        out.emplace_back(std::move(full));
    }
    return out;
}

/// A(t, k): probability of eventual absorption into closed class k from
/// transient state t. Rows follow part.transient order.
template <Scalar T>
struct AbsorptionTable {
    std::vector<std::size_t> transient;
    Matrix<T> probabilities;

    bool empty() const noexcept { return transient.empty(); }
    std::size_t row_of(std::size_t state) const
    {
        for (std::size_t r = 0; r < transient.size(); ++r) {
            if (transient[r] == state) {
                return r;
            }
        }
        fail(ErrorKind::validation, "state " + std::to_string(state) + " is not transient");
    }
};

/// Solves (I - P_TT) A = P_T->classes.
template <Scalar T>
AbsorptionTable<T> absorption_probabilities(const StochasticMatrix<T>& p, const ClassPartition& part)
{
    const auto& ts = part.transient;
    const std::size_t nt = ts.size();
    const std::size_t m = part.m();
    AbsorptionTable<T> table{ts, Matrix<T>(nt, m, T(0))};
    if (nt == 0) {
        return table;
    }
    Matrix<T> lhs = Matrix<T>::identity(nt);
    Matrix<T> rhs(nt, m, T(0));
    for (std::size_t a = 0; a < nt; ++a) {
        for (std::size_t b = 0; b < nt; ++b) {
            lhs(a, b) -= p(ts[a], ts[b]);
        }
        for (std::size_t k = 0; k < m; ++k) {
            for (auto j : part.closed_classes[k]) {
                rhs(a, k) += p(ts[a], j);
            }
        }
    }
    table.probabilities = solve(std::move(lhs), std::move(rhs));
    if constexpr (!scalar_traits<T>::exact) {
        for (std::size_t a = 0; a < nt; ++a) {
            for (std::size_t k = 0; k < m; ++k) {
                table.probabilities(a, k) = std::max(table.probabilities(a, k), 0.0);
            }
        }
    }
    return table;
}

} // namespace znr
