#include "znr/classify.hpp"

#include <algorithm>
#include <limits>

namespace znr {

std::size_t ClassPartition::state_count() const
{
    std::size_t n = transient.size();
    for (const auto& c : closed_classes) {
        n += c.size();
    }
    return n;
}

std::optional<std::size_t> ClassPartition::class_of(std::size_t v) const
{
    for (std::size_t k = 0; k < closed_classes.size(); ++k) {
        if (std::binary_search(closed_classes[k].begin(), closed_classes[k].end(), v)) {
            return k;
        }
    }
    return std::nullopt;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& adj)
{
    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
    const std::size_t n = adj.size();
    std::vector<std::size_t> order(n, unvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    // Iterative Tarjan: frames hold (vertex, next successor position).
    std::vector<std::pair<std::size_t, std::size_t>> frames;
    for (std::size_t start = 0; start < n; ++start) {
        if (order[start] != unvisited) {
            continue;
        }
        frames.emplace_back(start, 0);
        order[start] = low[start] = counter++;
        stack.push_back(start);
        on_stack[start] = true;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < adj[v].size()) {
                std::size_t w = adj[v][pos++];
                if (order[w] == unvisited) {
                    order[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], order[w]);
                }
                continue;
            }
            const std::size_t done = v;
            frames.pop_back();
            if (!frames.empty()) {
                auto parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == order[done]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
        }
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

bool is_strongly_connected(const Adjacency& adj)
{
    return strongly_connected_components(adj).size() == 1;
}

ClassPartition classify_support(const Adjacency& adj)
{
    const std::size_t n = adj.size();
    auto components = strongly_connected_components(adj);
    std::vector<std::size_t> component_of(n);
    for (std::size_t c = 0; c < components.size(); ++c) {
        for (auto v : components[c]) {
            component_of[v] = c;
        }
    }
    ClassPartition part;
    for (std::size_t c = 0; c < components.size(); ++c) {
        bool closed = true;
        for (auto v : components[c]) {
            for (auto w : adj[v]) {
                if (component_of[w] != c) {
                    closed = false;
                }
            }
        }
        if (closed) {
            part.closed_classes.push_back(components[c]);
        } else {
            part.transient.insert(part.transient.end(), components[c].begin(), components[c].end());
        }
    }
    std::sort(part.transient.begin(), part.transient.end());
    return part;
}

} // namespace znr
