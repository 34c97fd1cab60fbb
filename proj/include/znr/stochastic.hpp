#pragma once

#include "znr/error.hpp"
#include "znr/graph.hpp"
#include "znr/matrix.hpp"
#include "znr/rational.hpp"

#include <string>
#include <string_view>
#include <utility>

namespace znr {

enum class NumericMode { exact, floating };

/// Square transition matrix whose rows are probability vectors. Construction
/// validates: entries >= 0, every row sums to 1 (exactly for Rational, within
/// floating_sum_tolerance for double).
template <Scalar T>
class StochasticMatrix {
public:
    using value_type = T;

    StochasticMatrix(StateSpace states, Matrix<T> entries)
        : states_(std::move(states)), entries_(std::move(entries))
    {
        const std::size_t n = states_.size();
        if (entries_.rows() != n || entries_.cols() != n) {
            fail(ErrorKind::validation, "transition matrix must be " + std::to_string(n) + "x" +
                                            std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i) {
            T sum(0);
            for (std::size_t j = 0; j < n; ++j) {
                if (entries_(i, j) < 0) {
                    fail(ErrorKind::validation, "negative entry at (" + std::to_string(i) + ", " +
                                                    std::to_string(j) + ")");
                }
                sum += entries_(i, j);
            }
            if (!scalar_traits<T>::sums_to_one(sum)) {
                fail(ErrorKind::validation, "row " + std::to_string(i) + " does not sum to 1");
            }
        }
    }

    explicit StochasticMatrix(Matrix<T> entries)
        : StochasticMatrix(StateSpace(entries.rows()), std::move(entries))
    {
    }

    std::size_t size() const noexcept { return states_.size(); }
    const StateSpace& states() const noexcept { return states_; }
    const Matrix<T>& entries() const noexcept { return entries_; }
    const T& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

    bool has_edge(std::size_t i, std::size_t j) const { return scalar_traits<T>::positive(entries_(i, j)); }

    /// Out-neighbours under the positive-entry rule, self-loops excluded.
    std::vector<std::vector<std::size_t>> support(bool include_self_loops = false) const
    {
        std::vector<std::vector<std::size_t>> adj(size());
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t j = 0; j < size(); ++j) {
                if ((include_self_loops || i != j) && has_edge(i, j)) {
                    adj[i].push_back(j);
                }
            }
        }
        return adj;
    }

    template <Scalar U>
    StochasticMatrix<U> cast() const
    {
        return StochasticMatrix<U>(states_, entries_.template map<U>([](const T& x) { return scalar_cast<U>(x); }));
    }

    friend bool operator==(const StochasticMatrix&, const StochasticMatrix&) = default;

private:
    StateSpace states_;
    Matrix<T> entries_;
};

using ExactMatrix = StochasticMatrix<Rational>;
using FloatMatrix = StochasticMatrix<double>;

/// Restriction of a stochastic matrix to a closed set of states; the rows of a
/// closed class still sum to one after dropping the other columns.
template <Scalar T>
StochasticMatrix<T> restrict_to(const StochasticMatrix<T>& p, std::span<const std::size_t> states)
{
    std::vector<std::string> labels;
    if (p.states().has_labels()) {
        for (auto s : states) {
            labels.push_back(p.states().label(s));
        }
    }
    return StochasticMatrix<T>(StateSpace(states.size(), std::move(labels)), p.entries().select(states, states));
}

/// Rows with positive out-weight are normalised by their sum; zero rows follow
/// the dangling policy.
template <Scalar T>
StochasticMatrix<T> to_stochastic(const WeightedDigraph& g, DanglingPolicy dangling = DanglingPolicy::self_loop)
{
    const std::size_t n = g.size();
    Matrix<Rational> w(n, n, Rational(0));
    std::vector<Rational> out_weight(n, Rational(0));
    for (const auto& e : g.edges()) {
        w(e.src, e.dst) = e.weight;
        out_weight[e.src] += e.weight;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out_weight[i] > 0) {
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) /= out_weight[i];
            }
        } else if (dangling == DanglingPolicy::self_loop) {
            w(i, i) = 1;
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) = Rational(1, static_cast<long>(n));
            }
        }
    }
    return StochasticMatrix<Rational>(g.states(), std::move(w)).template cast<T>();
}

/// Matrix file: {"n": int, "rows": [[...]], "labels": [...]?}; entries are
/// JSON numbers or "p/q" strings. Always read exactly; cast for floating mode.
ExactMatrix parse_matrix_json(std::string_view text);
std::string serialize_matrix_json(const ExactMatrix& m);

/// Uniform teleportation kernel (1/n) 1 1^T.
template <Scalar T>
StochasticMatrix<T> uniform_kernel(const StateSpace& states)
{
    const auto n = static_cast<long>(states.size());
    return StochasticMatrix<T>(states, Matrix<T>(states.size(), states.size(), scalar_cast<T>(Rational(1, n))));
}

/// Personalised kernel 1 nu^T: every row equals nu.
template <Scalar T>
StochasticMatrix<T> personalized_kernel(const StateSpace& states, std::span<const T> nu)
{
    if (nu.size() != states.size()) {
        fail(ErrorKind::validation, "personalization vector has wrong length");
    }
    Matrix<T> q(states.size(), states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = 0; j < states.size(); ++j) {
            q(i, j) = nu[j];
        }
    }
    return StochasticMatrix<T>(states, std::move(q));
}

} // namespace znr
