#pragma once

#include "znr/stochastic.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace znr {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Closed communicating classes plus transient states. Classes are sorted
/// internally and ordered by their smallest member.
struct ClassPartition {
    std::vector<std::vector<std::size_t>> closed_classes;
    std::vector<std::size_t> transient;

    std::size_t m() const noexcept { return closed_classes.size(); }
    std::size_t state_count() const;
    /// Index of the closed class containing v, or nullopt for transient v.
    std::optional<std::size_t> class_of(std::size_t v) const;

    friend bool operator==(const ClassPartition&, const ClassPartition&) = default;
};

/// Strongly connected components (Tarjan), each sorted, listed by smallest member.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& adj);

bool is_strongly_connected(const Adjacency& adj);

/// Classification of the positive-entry digraph: an SCC is closed iff no edge
/// leaves it.
ClassPartition classify_support(const Adjacency& adj);

template <Scalar T>
ClassPartition classify_states(const StochasticMatrix<T>& p)
{
    return classify_support(p.support(true));
}

template <Scalar T>
bool is_irreducible(const StochasticMatrix<T>& p)
{
    return is_strongly_connected(p.support(true));
}

/// Positive-entry support of (1-e)P + eQ for any e in (0,1).
template <Scalar T>
Adjacency union_support(const StochasticMatrix<T>& p, const StochasticMatrix<T>& q, bool include_self_loops = false)
{
    Adjacency adj(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if ((include_self_loops || i != j) && (p.has_edge(i, j) || q.has_edge(i, j))) {
                adj[i].push_back(j);
            }
        }
    }
    return adj;
}

} // namespace znr
