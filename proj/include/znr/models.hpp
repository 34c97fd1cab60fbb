#pragma once

#include "znr/arborescence.hpp"
#include "znr/graph.hpp"
#include "znr/stochastic.hpp"

#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace znr {

/// Positive popularity weight per node.
class NodeWeights {
public:
    explicit NodeWeights(std::vector<Rational> w);
    const std::vector<Rational>& values() const noexcept { return w_; }
    const Rational& operator[](std::size_t i) const { return w_[i]; }
    std::size_t size() const noexcept { return w_.size(); }

private:
    std::vector<Rational> w_;
};

/// Positive comparison weight w_ij per directed edge. Comparisons are mutual:
/// whenever (i, j) is present so is (j, i). `max_out_degree` defaults to the
/// largest out-degree and may only be raised.
class EdgeComparisons {
public:
    EdgeComparisons(StateSpace states, std::map<std::pair<std::size_t, std::size_t>, Rational> weights,
                    std::optional<std::size_t> max_out_degree = std::nullopt);

    const StateSpace& states() const noexcept { return states_; }
    const std::map<std::pair<std::size_t, std::size_t>, Rational>& weights() const noexcept { return w_; }
    std::size_t max_out_degree() const noexcept { return d_; }

private:
    StateSpace states_;
    std::map<std::pair<std::size_t, std::size_t>, Rational> w_;
    std::size_t d_ = 1;
};

/// P(i, j) = 1/d_i for each successor j of i; weights are ignored.
ExactMatrix simple_random_walk(const WeightedDigraph& g, DanglingPolicy dangling = DanglingPolicy::self_loop);

/// pi(i) / d_i normalised to sum 1, with pi the tree-weight stationary law of
/// the simple random walk. Proportional to the arborescence count rooted at i.
std::vector<Rational> rumor_source_scores(const ExactMatrix& p, const WeightedDigraph& g);

/// Number of arborescences of g rooted at each node, by enumeration.
std::vector<Integer> arborescence_counts(const WeightedDigraph& g, const Guards& guards = default_guards());

/// P(i, j) = w_j / W(i), W(i) = sum of w over the successors of i.
ExactMatrix bradley_terry_chain(const WeightedDigraph& g, const NodeWeights& w,
                                DanglingPolicy dangling = DanglingPolicy::self_loop);

/// p(i, j) = w_ij / (D (w_ij + w_ji)) off the diagonal; the diagonal takes
/// the remaining mass.
ExactMatrix pairwise_comparison_chain(const EdgeComparisons& c);

struct LeafFormulaReport {
    /// Tree-weight stationary law of the Bradley-Terry chain.
    std::vector<Rational> stationary;
    /// sum over arborescences A rooted at i of W(i) / prod_{j in leaves(A)} w_j.
    std::vector<Rational> leaf_sums;
    std::vector<Rational> leaf_normalized;
    /// stationary(i) / leaf_normalized(i); empty where the leaf sum is 0.
    std::vector<std::optional<Rational>> ratio;
    bool proportional = false;
};

/// Compares the Bradley-Terry stationary law with the leaf-product closed form.
LeafFormulaReport bt_leaf_formula_check(const WeightedDigraph& g, const NodeWeights& w,
                                        const Guards& guards = default_guards());

/// `label<TAB>value` lines; every node must be listed exactly once.
std::vector<Rational> parse_node_values(std::string_view text, const StateSpace& states);

/// `src<TAB>dst<TAB>w` lines.
std::map<std::pair<std::size_t, std::size_t>, Rational> parse_edge_values(std::string_view text,
                                                                          const StateSpace& states);

} // namespace znr
