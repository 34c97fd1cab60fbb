#include "znr/arborescence.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace znr {

std::vector<std::pair<std::size_t, std::size_t>> Arborescence::edges() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t v = 0; v < parent.size(); ++v) {
        if (parent[v]) {
            out.emplace_back(v, *parent[v]);
        }
    }
    return out;
}

std::vector<std::size_t> Arborescence::leaves() const
{
    std::vector<bool> has_child(parent.size(), false);
    for (const auto& p : parent) {
        if (p) {
            has_child[*p] = true;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < parent.size(); ++v) {
        if (!has_child[v]) {
            out.push_back(v);
        }
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

Guards parse_guards(std::string_view spec, Guards base)
{
    auto to_count = [&](std::string_view text) -> std::uint64_t {
        Rational r = parse_rational(text);
        if (r < 1 || denominator(r) != 1) {
            fail(ErrorKind::parse, "guard value must be a positive integer: '" + std::string(text) + "'");
        }
        return numerator(r).convert_to<std::uint64_t>();
    };
    if (spec.find('=') == std::string_view::npos) {
        base.candidate_budget = to_count(spec);
        return base;
    }
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string_view item = spec.substr(start, comma == std::string_view::npos ? spec.npos : comma - start);
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            fail(ErrorKind::parse, "malformed guard setting '" + std::string(item) + "'");
        }
        std::string_view key = trim(item.substr(0, eq));
        std::uint64_t value = to_count(trim(item.substr(eq + 1)));
        if (key == "nodes") {
            base.enumeration_nodes = value;
        } else if (key == "candidates") {
            base.candidate_budget = value;
        } else if (key == "symbolic") {
            base.symbolic_nodes = value;
        } else if (key == "classes") {
            base.skeleton_classes = value;
        } else if (key == "leaf") {
            base.leaf_check_nodes = value;
        } else {
            fail(ErrorKind::parse, "unknown guard '" + std::string(key) + "'");
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return base;
}

Guards default_guards()
{
    if (const char* env = std::getenv("ZNR_GUARD"); env != nullptr && *env != '\0') {
        return parse_guards(env);
    }
    return {};
}

void for_each_arborescence(const Adjacency& adj, std::size_t root, const Guards& guards,
                           const std::function<void(const Arborescence&)>& visit)
{
    const std::size_t n = adj.size();
    if (root >= n) {
        fail(ErrorKind::validation, "root out of range");
    }
    if (n > guards.enumeration_nodes) {
        fail(ErrorKind::guard_exceeded, "enumeration limited to " + std::to_string(guards.enumeration_nodes) +
                                            " nodes, graph has " + std::to_string(n));
    }
    std::vector<std::size_t> order;
    std::vector<std::vector<std::size_t>> choices(n);
    std::uint64_t candidates = 1;
    for (std::size_t v = 0; v < n; ++v) {
        if (v == root) {
            continue;
        }
        for (auto w : adj[v]) {
            if (w != v) {
                choices[v].push_back(w);
            }
        }
        std::sort(choices[v].begin(), choices[v].end());
        choices[v].erase(std::unique(choices[v].begin(), choices[v].end()), choices[v].end());
        if (choices[v].empty()) {
            return;
        }
        if (candidates > guards.candidate_budget / choices[v].size()) {
            fail(ErrorKind::guard_exceeded, "more than " + std::to_string(guards.candidate_budget) +
                                                " candidate parent assignments");
        }
        candidates *= choices[v].size();
        order.push_back(v);
    }

    Arborescence current;
    current.root = root;
    current.parent.assign(n, std::nullopt);

    // Reject an assignment as soon as it closes a cycle: walking up from the
    // new parent through already assigned nodes must not return to v.
    auto closes_cycle = [&](std::size_t v, std::size_t p) {
        std::size_t u = p;
        while (u != v && current.parent[u]) {
            u = *current.parent[u];
        }
        return u == v;
    };

    std::vector<std::size_t> position(order.size(), 0);
    std::size_t depth = 0;
    if (order.empty()) {
        visit(current);
        return;
    }
    while (true) {
        const std::size_t v = order[depth];
        bool placed = false;
        while (position[depth] < choices[v].size()) {
            const std::size_t p = choices[v][position[depth]++];
            if (!closes_cycle(v, p)) {
                current.parent[v] = p;
                placed = true;
                break;
            }
        }
        if (placed) {
            if (depth + 1 == order.size()) {
                visit(current);
                current.parent[v].reset();
            } else {
                ++depth;
                position[depth] = 0;
            }
            continue;
        }
        if (depth == 0) {
            return;
        }
        --depth;
        current.parent[order[depth]].reset();
    }
}

std::vector<Arborescence> enumerate_arborescences(const Adjacency& adj, std::size_t root, const Guards& guards)
{
    std::vector<Arborescence> out;
    for_each_arborescence(adj, root, guards, [&](const Arborescence& a) { out.push_back(a); });
    return out;
}

std::vector<Arborescence> enumerate_arborescences(const WeightedDigraph& g, std::size_t root, const Guards& guards)
{
    return enumerate_arborescences(g.successors(), root, guards);
}

namespace {

void require_same_space(const ExactMatrix& p, const ExactMatrix& q)
{
    if (p.size() != q.size()) {
        fail(ErrorKind::validation, "P and Q must have the same number of states");
    }
}

void require_symbolic_size(std::size_t n, const Guards& guards)
{
    if (n > guards.symbolic_nodes) {
        fail(ErrorKind::guard_exceeded, "symbolic computations limited to " + std::to_string(guards.symbolic_nodes) +
                                            " states, chain has " + std::to_string(n));
    }
}

// P_eps(i, j) = P(i, j) + eps (Q(i, j) - P(i, j))
EpsPolynomial perturbed_entry(const ExactMatrix& p, const ExactMatrix& q, std::size_t i, std::size_t j)
{
    return EpsPolynomial::linear(p(i, j), q(i, j) - p(i, j));
}

} // namespace

EpsPolynomial perturbed_root_polynomial(const ExactMatrix& p, const ExactMatrix& q, std::size_t root,
                                        const Guards& guards)
{
    require_same_space(p, q);
    require_symbolic_size(p.size(), guards);
    if (root >= p.size()) {
        fail(ErrorKind::validation, "root out of range");
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i != root) {
            keep.push_back(i);
        }
    }
    Matrix<EpsPolynomial> l(keep.size(), keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = 0; b < keep.size(); ++b) {
            EpsPolynomial entry = EpsPolynomial(0) - perturbed_entry(p, q, keep[a], keep[b]);
            if (a == b) {
                entry += EpsPolynomial(1);
            }
            l(a, b) = std::move(entry);
        }
    }
    return bareiss_determinant(
        std::move(l), [](const EpsPolynomial& x) { return x.is_zero(); },
        [](const EpsPolynomial& a, const EpsPolynomial& b) { return divide_exact(a, b); });
}

EpsPolynomial perturbed_root_polynomial_enumerated(const ExactMatrix& p, const ExactMatrix& q, std::size_t root,
                                                   const Guards& guards)
{
    require_same_space(p, q);
    require_symbolic_size(p.size(), guards);
    EpsPolynomial total;
    for_each_arborescence(union_support(p, q), root, guards, [&](const Arborescence& a) {
        EpsPolynomial term(1);
        for (const auto& [src, dst] : a.edges()) {
            term = term * perturbed_entry(p, q, src, dst);
        }
        total += term;
    });
    return total;
}

std::vector<EpsPolynomial> perturbed_root_polynomials(const ExactMatrix& p, const ExactMatrix& q,
                                                      const Guards& guards)
{
    std::vector<EpsPolynomial> out;
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out.push_back(perturbed_root_polynomial(p, q, i, guards));
    }
    return out;
}

PolynomialLimit polynomial_limit(const ExactMatrix& p, const ExactMatrix& q, const Guards& guards)
{
    require_same_space(p, q);
    require_symbolic_size(p.size(), guards);
    if (!is_strongly_connected(union_support(p, q, true))) {
        fail(ErrorKind::not_irreducible, "perturbed chain is reducible for every eps in (0,1)");
    }
    PolynomialLimit out;
    out.root_polynomials = perturbed_root_polynomials(p, q, guards);
    for (const auto& h : out.root_polynomials) {
        out.total += h;
    }
    const std::size_t d = min_degree(out.total);
    out.leading_degree = d;
    const Rational a_total = out.total.coefficient(d);
    const Rational b_total = out.total.coefficient(d + 1);
    for (const auto& h : out.root_polynomials) {
        const Rational a = h.coefficient(d);
        const Rational b = h.coefficient(d + 1);
        out.limit.push_back(a / a_total);
        out.first_order.push_back((b * a_total - a * b_total) / (a_total * a_total));
    }
    return out;
}

Distribution<Rational> exact_limit_from_polynomials(const ExactMatrix& p, const ExactMatrix& q, const Guards& guards)
{
    return Distribution<Rational>(polynomial_limit(p, q, guards).limit);
}

std::vector<Rational> polynomial_ratio_at(const PolynomialLimit& limit, const Rational& eps)
{
    const Rational total = limit.total.evaluate(eps);
    if (total == 0) {
        fail(ErrorKind::zero_polynomial, "total root weight vanishes at eps = " + to_string(eps));
    }
    std::vector<Rational> out;
    for (const auto& h : limit.root_polynomials) {
        out.push_back(h.evaluate(eps) / total);
    }
    return out;
}

SkeletonReport skeleton_identity_check(const ExactMatrix& p, const ExactMatrix& q, const ClassPartition& part,
                                       const Guards& guards)
{
    require_same_space(p, q);
    if (!part.transient.empty()) {
        fail(ErrorKind::transient_states_present, "skeleton check requires a chain without transient states");
    }
    const std::size_t m = part.m();
    if (m > guards.skeleton_classes) {
        fail(ErrorKind::guard_exceeded, "skeleton check limited to " + std::to_string(guards.skeleton_classes) +
                                            " classes");
    }
    const auto& classes = part.closed_classes;
    SkeletonReport report;
    report.gamma = Matrix<Rational>(m, m, Rational(0));
    std::uint64_t labellings = 1;
    for (std::size_t u = 0; u < m; ++u) {
        report.class_sizes.push_back(classes[u].size());
        if (labellings > guards.candidate_budget / classes[u].size()) {
            fail(ErrorKind::guard_exceeded, "too many class labellings");
        }
        labellings *= classes[u].size();
        for (std::size_t v = 0; v < m; ++v) {
            const Rational& block = q(classes[u].front(), classes[v].front());
            Rational sum = 0;
            for (auto x : classes[u]) {
                for (auto y : classes[v]) {
                    if (q(x, y) != block) {
                        fail(ErrorKind::validation, "Q is not constant on the class blocks");
                    }
                    sum += q(x, y);
                }
            }
            report.gamma(u, v) = sum / static_cast<long>(classes[u].size());
        }
    }

    Adjacency complete(m);
    for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t v = 0; v < m; ++v) {
            if (u != v) {
                complete[u].push_back(v);
            }
        }
    }
    Rational inverse_label_count = Rational(1) / Rational(static_cast<long>(labellings));

    std::vector<std::size_t> label(m);
    for (std::size_t root = 0; root < m; ++root) {
        for_each_arborescence(complete, root, guards, [&](const Arborescence& h) {
            SkeletonEntry entry;
            entry.root = root;
            entry.edges = h.edges();
            entry.gamma_weight = 1;
            for (const auto& [u, v] : entry.edges) {
                entry.gamma_weight *= report.gamma(u, v);
            }
            entry.labelled_sum = 0;
            std::vector<std::size_t> digit(m, 0);
            while (true) {
                Rational term = inverse_label_count;
                for (const auto& [u, v] : entry.edges) {
                    term *= q(classes[u][digit[u]], classes[v][digit[v]]);
                }
                entry.labelled_sum += term;
                std::size_t k = 0;
                while (k < m && ++digit[k] == classes[k].size()) {
                    digit[k] = 0;
                    ++k;
                }
                if (k == m) {
                    break;
                }
            }
            entry.equal = entry.gamma_weight == entry.labelled_sum;
            ++(entry.equal ? report.equal_count : report.discrepant_count);
            report.skeletons.push_back(std::move(entry));
        });
    }
    return report;
}

} // namespace znr
