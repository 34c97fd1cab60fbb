#pragma once

#include "znr/rational.hpp"

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace znr {

/// States are 0..n-1 internally; labels carry the original node identifiers.
class StateSpace {
public:
    explicit StateSpace(std::size_t n);
    StateSpace(std::size_t n, std::vector<std::string> labels);

    std::size_t size() const noexcept { return n_; }
    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Display name: the label if present, otherwise the decimal index.
    std::string label(std::size_t i) const;
    std::optional<std::size_t> find(std::string_view label) const;

    friend bool operator==(const StateSpace&, const StateSpace&) = default;

private:
    std::size_t n_;
    std::vector<std::string> labels_;
};

struct Edge {
    std::size_t src;
    std::size_t dst;
    Rational weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class WeightedDigraph {
public:
    WeightedDigraph(StateSpace states, std::vector<Edge> edges);

    const StateSpace& states() const noexcept { return states_; }
    std::size_t size() const noexcept { return states_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Distinct successors of each node, ascending, self-loops included.
    std::vector<std::vector<std::size_t>> successors() const;
    std::vector<std::size_t> out_degrees() const;

    friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;

private:
    StateSpace states_;
    std::vector<Edge> edges_;
};

/// Lines are `src dst [weight]` separated by tabs or spaces; `#` starts a
/// comment; a single-token line declares a node without edges. Node ids are
/// assigned in order of first appearance. Weights accept decimals and "p/q".
WeightedDigraph parse_edge_list(std::istream& in);
WeightedDigraph parse_edge_list(std::string_view text);

/// Inverse of parse_edge_list: every node is declared first, in index order,
/// followed by one `src<TAB>dst<TAB>p/q` line per edge.
std::string serialize_edge_list(const WeightedDigraph& g);

enum class DanglingPolicy { self_loop, uniform_row };

DanglingPolicy parse_dangling_policy(std::string_view text);

} // namespace znr
