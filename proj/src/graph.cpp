#include "znr/graph.hpp"

#include "znr/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace znr {

StateSpace::StateSpace(std::size_t n) : n_(n)
{
    if (n == 0) {
        fail(ErrorKind::validation, "state space must contain at least one state");
    }
}

StateSpace::StateSpace(std::size_t n, std::vector<std::string> labels) : StateSpace(n)
{
    if (!labels.empty()) {
        if (labels.size() != n) {
            fail(ErrorKind::validation, "expected " + std::to_string(n) + " labels, got " +
                                            std::to_string(labels.size()));
        }
        std::set<std::string_view> seen;
        for (const auto& l : labels) {
            if (!seen.insert(l).second) {
                fail(ErrorKind::validation, "duplicate label '" + l + "'");
            }
        }
    }
    labels_ = std::move(labels);
}

std::string StateSpace::label(std::size_t i) const
{
    return labels_.empty() ? std::to_string(i) : labels_[i];
}

std::optional<std::size_t> StateSpace::find(std::string_view label) const
{
    if (labels_.empty()) {
        std::size_t v = 0;
        for (char c : label) {
            if (c < '0' || c > '9') {
                return std::nullopt;
            }
            v = v * 10 + static_cast<std::size_t>(c - '0');
        }
        if (label.empty() || v >= n_) {
            return std::nullopt;
        }
        return v;
    }
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

WeightedDigraph::WeightedDigraph(StateSpace states, std::vector<Edge> edges)
    : states_(std::move(states)), edges_(std::move(edges))
{
    const std::size_t n = states_.size();
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : edges_) {
        if (e.src >= n || e.dst >= n) {
            fail(ErrorKind::validation, "edge endpoint out of range");
        }
        if (e.weight < 0) {
            fail(ErrorKind::validation, "negative edge weight on (" + states_.label(e.src) + ", " +
                                            states_.label(e.dst) + ")");
        }
        if (!seen.emplace(e.src, e.dst).second) {
            fail(ErrorKind::validation, "duplicate edge (" + states_.label(e.src) + ", " +
                                            states_.label(e.dst) + ")");
        }
    }
}

std::vector<std::vector<std::size_t>> WeightedDigraph::successors() const
{
    std::vector<std::vector<std::size_t>> out(size());
    for (const auto& e : edges_) {
        out[e.src].push_back(e.dst);
    }
    for (auto& s : out) {
        std::sort(s.begin(), s.end());
    }
    return out;
}

std::vector<std::size_t> WeightedDigraph::out_degrees() const
{
    std::vector<std::size_t> d(size(), 0);
    for (const auto& e : edges_) {
        ++d[e.src];
    }
    return d;
}

WeightedDigraph parse_edge_list(std::istream& in)
{
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Edge> edges;
    std::set<std::pair<std::size_t, std::size_t>> seen;

    auto intern = [&](const std::string& token) {
        auto [it, inserted] = index.emplace(token, labels.size());
        if (inserted) {
            labels.push_back(token);
        }
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) {
            tokens.push_back(std::move(t));
        }
        if (tokens.empty()) {
            continue;
        }
        const std::string where = " at line " + std::to_string(line_no);
        if (tokens.size() > 3) {
            fail(ErrorKind::parse, "malformed line" + where + ": expected 'src dst [weight]'");
        }
        if (tokens.size() == 1) {
            intern(tokens[0]);
            continue;
        }
        Rational weight = 1;
        if (tokens.size() == 3) {
            try {
                weight = parse_rational(tokens[2]);
            } catch (const Error&) {
                fail(ErrorKind::parse, "malformed weight '" + tokens[2] + "'" + where);
            }
            if (weight < 0) {
                fail(ErrorKind::parse, "negative weight" + where);
            }
        }
        std::size_t src = intern(tokens[0]);
        std::size_t dst = intern(tokens[1]);
        if (!seen.emplace(src, dst).second) {
            fail(ErrorKind::parse, "duplicate edge (" + tokens[0] + ", " + tokens[1] + ")" + where);
        }
        edges.push_back(Edge{src, dst, std::move(weight)});
    }
    if (labels.empty()) {
        fail(ErrorKind::parse, "edge list contains no nodes");
    }
    std::size_t n = labels.size();
    return WeightedDigraph(StateSpace(n, std::move(labels)), std::move(edges));
}

WeightedDigraph parse_edge_list(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

std::string serialize_edge_list(const WeightedDigraph& g)
{
    const auto& states = g.states();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string l = states.label(i);
        if (l.empty() || l.find_first_of(" \t\r\n#") != std::string::npos) {
            fail(ErrorKind::validation, "label '" + l + "' cannot be written as an edge-list token");
        }
    }
    std::string out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        out += states.label(i);
        out += '\n';
    }
    for (const auto& e : g.edges()) {
        out += states.label(e.src);
        out += '\t';
        out += states.label(e.dst);
        out += '\t';
        out += to_string(e.weight);
        out += '\n';
    }
    return out;
}

DanglingPolicy parse_dangling_policy(std::string_view text)
{
    if (text == "self_loop") {
        return DanglingPolicy::self_loop;
    }
    if (text == "uniform_row") {
        return DanglingPolicy::uniform_row;
    }
    fail(ErrorKind::parse, "unknown dangling policy '" + std::string(text) + "'");
}

} // namespace znr
