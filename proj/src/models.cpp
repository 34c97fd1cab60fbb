#include "znr/models.hpp"

#include "znr/classify.hpp"

#include <algorithm>
#include <sstream>

namespace znr {

NodeWeights::NodeWeights(std::vector<Rational> w) : w_(std::move(w))
{
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (w_[i] <= 0) {
            fail(ErrorKind::nonpositive_weight, "node weight " + std::to_string(i) + " is not positive");
        }
    }
}

EdgeComparisons::EdgeComparisons(StateSpace states, std::map<std::pair<std::size_t, std::size_t>, Rational> weights,
                                 std::optional<std::size_t> max_out_degree)
    : states_(std::move(states)), w_(std::move(weights))
{
    std::vector<std::size_t> degree(states_.size(), 0);
    for (const auto& [edge, w] : w_) {
        const auto [i, j] = edge;
        if (i >= states_.size() || j >= states_.size() || i == j) {
            fail(ErrorKind::validation, "comparison edge out of range or a self-loop");
        }
        if (w <= 0) {
            fail(ErrorKind::nonpositive_weight,
                 "comparison weight on (" + states_.label(i) + ", " + states_.label(j) + ") is not positive");
        }
        if (!w_.contains({j, i})) {
            fail(ErrorKind::missing_reverse_weight,
                 "no weight for (" + states_.label(j) + ", " + states_.label(i) + ")");
        }
        ++degree[i];
    }
    const std::size_t observed = std::max<std::size_t>(1, *std::max_element(degree.begin(), degree.end()));
    d_ = max_out_degree.value_or(observed);
    if (d_ < observed) {
        fail(ErrorKind::validation, "D = " + std::to_string(d_) + " is below the maximum out-degree " +
                                        std::to_string(observed));
    }
}

namespace {

void apply_dangling(Matrix<Rational>& m, std::size_t i, DanglingPolicy dangling)
{
    const std::size_t n = m.rows();
    if (dangling == DanglingPolicy::self_loop) {
        m(i, i) = 1;
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = Rational(1, static_cast<long>(n));
        }
    }
}

} // namespace

ExactMatrix simple_random_walk(const WeightedDigraph& g, DanglingPolicy dangling)
{
    const std::size_t n = g.size();
    const auto succ = g.successors();
    Matrix<Rational> m(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (succ[i].empty()) {
            apply_dangling(m, i, dangling);
            continue;
        }
        const Rational share(1, static_cast<long>(succ[i].size()));
        for (auto j : succ[i]) {
            m(i, j) = share;
        }
    }
    return ExactMatrix(g.states(), std::move(m));
}

std::vector<Rational> rumor_source_scores(const ExactMatrix& p, const WeightedDigraph& g)
{
    if (p.size() != g.size()) {
        fail(ErrorKind::validation, "matrix and graph sizes differ");
    }
    const auto pi = mctt_stationary(p);
    const auto degree = g.out_degrees();
    std::vector<Rational> scores(p.size());
    Rational total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (degree[i] == 0) {
            fail(ErrorKind::validation, "node " + g.states().label(i) + " has no out-edges");
        }
        scores[i] = pi[i] / static_cast<long>(degree[i]);
        total += scores[i];
    }
    for (auto& s : scores) {
        s /= total;
    }
    return scores;
}

std::vector<Integer> arborescence_counts(const WeightedDigraph& g, const Guards& guards)
{
    const auto succ = g.successors();
    std::vector<Integer> counts(g.size(), Integer(0));
    for (std::size_t root = 0; root < g.size(); ++root) {
        for_each_arborescence(succ, root, guards, [&](const Arborescence&) { ++counts[root]; });
    }
    return counts;
}

ExactMatrix bradley_terry_chain(const WeightedDigraph& g, const NodeWeights& w, DanglingPolicy dangling)
{
    const std::size_t n = g.size();
    if (w.size() != n) {
        fail(ErrorKind::validation, "expected " + std::to_string(n) + " node weights");
    }
    const auto succ = g.successors();
    Matrix<Rational> m(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (succ[i].empty()) {
            apply_dangling(m, i, dangling);
            continue;
        }
        Rational total = 0;
        for (auto j : succ[i]) {
            total += w[j];
        }
        for (auto j : succ[i]) {
            m(i, j) = w[j] / total;
        }
    }
    return ExactMatrix(g.states(), std::move(m));
}

ExactMatrix pairwise_comparison_chain(const EdgeComparisons& c)
{
    const std::size_t n = c.states().size();
    const Rational d = static_cast<long>(c.max_out_degree());
    Matrix<Rational> m(n, n, Rational(0));
    for (const auto& [edge, wij] : c.weights()) {
        const auto [i, j] = edge;
        const Rational& wji = c.weights().at({j, i});
        m(i, j) = wij / (d * (wij + wji));
    }
    for (std::size_t i = 0; i < n; ++i) {
        Rational off = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                off += m(i, j);
            }
        }
        m(i, i) = 1 - off;
    }
    return ExactMatrix(c.states(), std::move(m));
}

LeafFormulaReport bt_leaf_formula_check(const WeightedDigraph& g, const NodeWeights& w, const Guards& guards)
{
    const std::size_t n = g.size();
    if (n > guards.leaf_check_nodes) {
        fail(ErrorKind::guard_exceeded, "leaf-formula check limited to " + std::to_string(guards.leaf_check_nodes) +
                                            " nodes");
    }
    const ExactMatrix p = bradley_terry_chain(g, w);
    LeafFormulaReport report;
    report.stationary = mctt_stationary(p).values();

    const auto succ = g.successors();
    std::vector<Rational> big_w(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (auto j : succ[i]) {
            big_w[i] += w[j];
        }
    }
    Rational total = 0;
    for (std::size_t root = 0; root < n; ++root) {
        Rational sum = 0;
        for_each_arborescence(succ, root, guards, [&](const Arborescence& a) {
            Rational denom = 1;
            for (auto leaf : a.leaves()) {
                denom *= w[leaf];
            }
            sum += big_w[root] / denom;
        });
        report.leaf_sums.push_back(sum);
        total += sum;
    }
    report.proportional = total > 0;
    std::optional<Rational> common;
    for (std::size_t i = 0; i < n; ++i) {
        report.leaf_normalized.push_back(total > 0 ? Rational(report.leaf_sums[i] / total) : Rational(0));
        if (report.leaf_normalized[i] == 0) {
            report.ratio.emplace_back(std::nullopt);
            report.proportional = report.proportional && report.stationary[i] == 0;
            continue;
        }
        Rational r = report.stationary[i] / report.leaf_normalized[i];
        if (!common) {
            common = r;
        }
        report.proportional = report.proportional && r == *common;
        report.ratio.emplace_back(std::move(r));
    }
    return report;
}

namespace {

std::vector<std::vector<std::string>> tokenized_lines(std::string_view text)
{
    std::vector<std::vector<std::string>> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) {
            tokens.push_back(std::move(t));
        }
        if (!tokens.empty()) {
            out.push_back(std::move(tokens));
        }
    }
    return out;
}

std::size_t lookup(const StateSpace& states, const std::string& label)
{
    auto idx = states.find(label);
    if (!idx) {
        fail(ErrorKind::parse, "unknown node '" + label + "'");
    }
    return *idx;
}

} // namespace

std::vector<Rational> parse_node_values(std::string_view text, const StateSpace& states)
{
    std::vector<std::optional<Rational>> values(states.size());
    for (const auto& tokens : tokenized_lines(text)) {
        if (tokens.size() != 2) {
            fail(ErrorKind::parse, "expected 'node value' lines");
        }
        const std::size_t i = lookup(states, tokens[0]);
        if (values[i]) {
            fail(ErrorKind::parse, "node '" + tokens[0] + "' listed twice");
        }
        values[i] = parse_rational(tokens[1]);
    }
    std::vector<Rational> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i]) {
            fail(ErrorKind::parse, "no value for node '" + states.label(i) + "'");
        }
        out.push_back(*values[i]);
    }
    return out;
}

std::map<std::pair<std::size_t, std::size_t>, Rational> parse_edge_values(std::string_view text,
                                                                          const StateSpace& states)
{
    std::map<std::pair<std::size_t, std::size_t>, Rational> out;
    for (const auto& tokens : tokenized_lines(text)) {
        if (tokens.size() != 3) {
            fail(ErrorKind::parse, "expected 'src dst value' lines");
        }
        auto key = std::make_pair(lookup(states, tokens[0]), lookup(states, tokens[1]));
        if (!out.emplace(key, parse_rational(tokens[2])).second) {
            fail(ErrorKind::parse, "edge (" + tokens[0] + ", " + tokens[1] + ") listed twice");
        }
    }
    return out;
}

} // namespace znr
