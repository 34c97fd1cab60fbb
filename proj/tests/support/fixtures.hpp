#pragma once

// Shared fixtures and seeded instance generators for the unit and acceptance
// suites.

#include "znr/classify.hpp"
#include "znr/stochastic.hpp"
#include "znr/zero_noise.hpp"

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace znr::fixtures {

using Rng = std::mt19937_64;

inline Rational R(const char* text) { return parse_rational(text); }

inline std::vector<Rational> rationals(std::initializer_list<const char*> values)
{
    std::vector<Rational> out;
    for (const char* v : values) {
        out.push_back(parse_rational(v));
    }
    return out;
}

inline Matrix<Rational> rational_matrix(std::initializer_list<std::initializer_list<const char*>> rows)
{
    const std::size_t n = rows.size();
    const std::size_t c = rows.begin()->size();
    Matrix<Rational> m(n, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const char* v : row) {
            m(i, j++) = parse_rational(v);
        }
        ++i;
    }
    return m;
}

inline ExactMatrix exact(std::initializer_list<std::initializer_list<const char*>> rows)
{
    return ExactMatrix(rational_matrix(rows));
}

/// Two-cycle on {0,1} plus the absorbing state 2.
inline ExactMatrix two_cycle_plus_absorber() { return exact({{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "1"}}); }

/// Absorbing states 0 and 1 with a leaky state 2.
inline ExactMatrix leaky_absorber() { return exact({{"1", "0", "0"}, {"0", "1", "0"}, {"1/2", "1/4", "1/4"}}); }

inline ExactMatrix three_state_star() { return exact({{"0", "1/2", "1/2"}, {"1", "0", "0"}, {"1", "0", "0"}}); }

/// Block kernel for the two-cycle plus absorber with gamma rows (1/3,1/3), (1/2,0).
inline ExactMatrix block_example_kernel()
{
    const ExactMatrix p = two_cycle_plus_absorber();
    return expand_block_kernel(p.states(), classify_states(p), rational_matrix({{"1/3", "1/3"}, {"1/2", "0"}}));
}

/// Dense kernel on the two-cycle plus absorber whose stationary law moves
/// linearly in eps.
inline ExactMatrix tilted_kernel() { return exact({{"1/2", "1/4", "1/4"}, {"1/4", "1/4", "1/2"}, {"1/3", "1/3", "1/3"}}); }

inline Rational small_weight(Rng& rng) { return Rational(std::uniform_int_distribution<int>(1, 5)(rng)); }

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline ExactMatrix normalize_rows(Matrix<Rational> w)
{
    for (std::size_t i = 0; i < w.rows(); ++i) {
        Rational sum(0);
        for (std::size_t j = 0; j < w.cols(); ++j) {
            sum += w(i, j);
        }
        for (std::size_t j = 0; j < w.cols(); ++j) {
            w(i, j) /= sum;
        }
    }
    return ExactMatrix(std::move(w));
}

/// Puts an irreducible random block on the listed states: a directed cycle
/// through all of them plus random extra edges (self-loops included).
inline void fill_irreducible_block(Matrix<Rational>& w, const std::vector<std::size_t>& ids, Rng& rng,
                                   double density = 0.35)
{
    const std::size_t k = ids.size();
    if (k == 1) {
        w(ids[0], ids[0]) = small_weight(rng);
        return;
    }
    for (std::size_t a = 0; a < k; ++a) {
        w(ids[a], ids[(a + 1) % k]) = small_weight(rng);
        for (std::size_t b = 0; b < k; ++b) {
            if (w(ids[a], ids[b]) == 0 && coin(rng, density)) {
                w(ids[a], ids[b]) = small_weight(rng);
            }
        }
    }
}

inline std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng)
{
    std::vector<std::size_t> ids(n);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    std::shuffle(ids.begin(), ids.end(), rng);
    return ids;
}

inline ExactMatrix random_irreducible(std::size_t n, Rng& rng)
{
    Matrix<Rational> w(n, n, Rational(0));
    fill_irreducible_block(w, shuffled_indices(n, rng), rng);
    return normalize_rows(std::move(w));
}

/// Arbitrary sparse stochastic matrix; may be reducible.
inline ExactMatrix random_stochastic(std::size_t n, Rng& rng, double density = 0.4)
{
    Matrix<Rational> w(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (coin(rng, density)) {
                w(i, j) = small_weight(rng);
            }
        }
        const std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        if (w(i, j) == 0) {
            w(i, j) = small_weight(rng);
        }
    }
    return normalize_rows(std::move(w));
}

struct ReducibleInstance {
    ExactMatrix p;
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t> transient;
};

/// Closed classes of the given sizes plus `transient_count` transient states,
/// laid out on a shuffled index set.
inline ReducibleInstance random_reducible(const std::vector<std::size_t>& sizes, std::size_t transient_count, Rng& rng)
{
    const std::size_t closed = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    const std::size_t n = closed + transient_count;
    const std::vector<std::size_t> ids = shuffled_indices(n, rng);
    Matrix<Rational> w(n, n, Rational(0));
    ReducibleInstance inst{ExactMatrix(Matrix<Rational>::identity(1)), {}, {}};
    std::size_t next = 0;
    for (std::size_t size : sizes) {
        std::vector<std::size_t> block(ids.begin() + static_cast<long>(next), ids.begin() + static_cast<long>(next + size));
        next += size;
        fill_irreducible_block(w, block, rng);
        inst.classes.push_back(block);
    }
    std::vector<std::size_t> closed_states(ids.begin(), ids.begin() + static_cast<long>(closed));
    for (std::size_t a = closed; a < n; ++a) {
        const std::size_t t = ids[a];
        const std::size_t target = closed_states[std::uniform_int_distribution<std::size_t>(0, closed - 1)(rng)];
        w(t, target) = small_weight(rng);
        for (std::size_t j = 0; j < n; ++j) {
            if (w(t, j) == 0 && coin(rng, 0.3)) {
                w(t, j) = small_weight(rng);
            }
        }
        inst.transient.push_back(t);
    }
    for (auto& c : inst.classes) {
        std::sort(c.begin(), c.end());
    }
    std::sort(inst.classes.begin(), inst.classes.end());
    std::sort(inst.transient.begin(), inst.transient.end());
    inst.p = normalize_rows(std::move(w));
    return inst;
}

inline std::vector<std::size_t> random_sizes(std::size_t m, std::size_t max_size, Rng& rng)
{
    std::vector<std::size_t> sizes(m);
    for (auto& s : sizes) {
        s = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
    }
    return sizes;
}

/// Block kernel with strictly positive gamma entries, so Gamma is irreducible.
inline ExactMatrix random_block_kernel(const ExactMatrix& p, Rng& rng)
{
    const ClassPartition part = classify_states(p);
    const std::size_t m = part.m();
    Matrix<Rational> block(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        Rational denom(0);
        for (std::size_t j = 0; j < m; ++j) {
            block(i, j) = small_weight(rng);
            denom += block(i, j) * static_cast<long>(part.closed_classes[j].size());
        }
        for (std::size_t j = 0; j < m; ++j) {
            block(i, j) /= denom;
        }
    }
    return expand_block_kernel(p.states(), part, block);
}

/// Random probability vector with every entry positive.
inline std::vector<Rational> random_distribution(std::size_t n, Rng& rng)
{
    std::vector<Rational> v(n);
    Rational sum(0);
    for (auto& x : v) {
        x = small_weight(rng);
        sum += x;
    }
    for (auto& x : v) {
        x /= sum;
    }
    return v;
}

/// Kernel whose rows are identical within each closed class (any positive
/// target law, transient states included); transient rows are arbitrary.
inline ExactMatrix random_class_row_kernel(const ExactMatrix& p, Rng& rng)
{
    const ClassPartition part = classify_states(p);
    const std::size_t n = p.size();
    Matrix<Rational> q(n, n);
    auto put_row = [&](std::size_t x, const std::vector<Rational>& row) {
        for (std::size_t y = 0; y < n; ++y) {
            q(x, y) = row[y];
        }
    };
    for (const auto& c : part.closed_classes) {
        const auto row = random_distribution(n, rng);
        for (auto x : c) {
            put_row(x, row);
        }
    }
    for (auto t : part.transient) {
        put_row(t, random_distribution(n, rng));
    }
    return ExactMatrix(p.states(), std::move(q));
}

/// Dense kernel with random positive entries.
inline ExactMatrix random_dense_kernel(std::size_t n, Rng& rng)
{
    Matrix<Rational> w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            w(i, j) = small_weight(rng);
        }
    }
    return normalize_rows(std::move(w));
}

/// Strongly connected simple digraph with unit weights and no self-loops.
inline WeightedDigraph random_strongly_connected(std::size_t n, Rng& rng, double density = 0.35)
{
    const std::vector<std::size_t> ids = shuffled_indices(n, rng);
    Matrix<int> present(n, n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        present(ids[a], ids[(a + 1) % n]) = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && coin(rng, density)) {
                present(i, j) = 1;
            }
        }
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && present(i, j)) {
                edges.push_back({i, j, Rational(1)});
            }
        }
    }
    return WeightedDigraph(StateSpace(n), std::move(edges));
}

inline WeightedDigraph complete_digraph(std::size_t n)
{
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                edges.push_back({i, j, Rational(1)});
            }
        }
    }
    return WeightedDigraph(StateSpace(n), std::move(edges));
}

inline WeightedDigraph directed_cycle(std::size_t n)
{
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        edges.push_back({i, (i + 1) % n, Rational(1)});
    }
    return WeightedDigraph(StateSpace(n), std::move(edges));
}

template <Scalar T>
double linf_distance(const std::vector<T>& a, const std::vector<T>& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, scalar_traits<T>::to_double(scalar_traits<T>::abs(a[i] - b[i])));
    }
    return d;
}

inline double linf_distance(const std::vector<double>& a, const std::vector<Rational>& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - to_double(b[i])));
    }
    return d;
}

} // namespace znr::fixtures
