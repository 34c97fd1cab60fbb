#include "support/fixtures.hpp"

#include "znr/classify.hpp"
#include "znr/graph.hpp"
#include "znr/stochastic.hpp"

#include <doctest.h>

#include <deque>
#include <string>

using namespace znr;
using namespace znr::fixtures;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::validation;
}

std::string message_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    FAIL("expected an error");
    return {};
}

bool reaches_closed(const ExactMatrix& p, const ClassPartition& part, std::size_t start)
{
    std::vector<bool> seen(p.size(), false);
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        if (part.class_of(v)) {
            return true;
        }
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p.has_edge(v, j) && !seen[j]) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    return false;
}

} // namespace

TEST_CASE("edge list: two-node cycle")
{
    const WeightedDigraph g = parse_edge_list("a b\nb a");
    CHECK(g.size() == 2);
    CHECK(g.states().label(0) == "a");
    CHECK(g.states().label(1) == "b");
    REQUIRE(g.edges().size() == 2);
    CHECK(g.edges()[0] == Edge{0, 1, Rational(1)});
    CHECK(g.edges()[1] == Edge{1, 0, Rational(1)});
}

TEST_CASE("edge list: weights and comments")
{
    const WeightedDigraph g = parse_edge_list("1 2 0.5\n# c\n1 3 0.5\n2 1\n3 1");
    CHECK(g.size() == 3);
    REQUIRE(g.edges().size() == 4);
    CHECK(g.edges()[0] == Edge{0, 1, R("1/2")});
    CHECK(g.edges()[1] == Edge{0, 2, R("1/2")});
    CHECK(g.edges()[2] == Edge{1, 0, Rational(1)});
    CHECK(g.edges()[3] == Edge{2, 0, Rational(1)});
}

TEST_CASE("edge list: tabs, trailing comments and rational weights")
{
    const WeightedDigraph g = parse_edge_list("x\ty\t2/3   # note\n\n  y x 1e-1\n");
    REQUIRE(g.edges().size() == 2);
    CHECK(g.edges()[0].weight == R("2/3"));
    CHECK(g.edges()[1].weight == R("1/10"));
}

TEST_CASE("edge list: errors report the line")
{
    CHECK(kind_of([] { parse_edge_list("a b -1"); }) == ErrorKind::parse);
    CHECK(message_of([] { parse_edge_list("a b -1"); }).find("negative weight at line 1") != std::string::npos);
    CHECK(message_of([] { parse_edge_list("a b\na b 2"); }).find("duplicate edge") != std::string::npos);
    CHECK(message_of([] { parse_edge_list("a b\nb a\na b c d"); }).find("line 3") != std::string::npos);
    CHECK(kind_of([] { parse_edge_list("a b x"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_edge_list("# nothing\n"); }) == ErrorKind::parse);
}

TEST_CASE("edge list: serialize then parse is the identity")
{
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 6;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back("v" + std::to_string(i * 7 + static_cast<std::size_t>(trial)));
        }
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (coin(rng, 0.3)) {
                    edges.push_back({i, j, small_weight(rng) / small_weight(rng)});
                }
            }
        }
        const WeightedDigraph g(StateSpace(n, labels), edges);
        const WeightedDigraph back = parse_edge_list(serialize_edge_list(g));
        CHECK(back == g);
    }
}

TEST_CASE("edge list: isolated nodes survive a round trip")
{
    const WeightedDigraph g(StateSpace(3, {"a", "b", "lonely"}), {{0, 1, Rational(1)}});
    CHECK(parse_edge_list(serialize_edge_list(g)) == g);
}

TEST_CASE("state space and digraph validation")
{
    CHECK(kind_of([] { StateSpace(0); }) == ErrorKind::validation);
    CHECK(kind_of([] { StateSpace(2, {"a", "a"}); }) == ErrorKind::validation);
    CHECK(kind_of([] { WeightedDigraph(StateSpace(2), {{0, 1, Rational(1)}, {0, 1, Rational(2)}}); }) ==
          ErrorKind::validation);
    CHECK(kind_of([] { WeightedDigraph(StateSpace(2), {{0, 2, Rational(1)}}); }) == ErrorKind::validation);
    CHECK(kind_of([] { WeightedDigraph(StateSpace(2), {{0, 1, Rational(-1)}}); }) == ErrorKind::validation);
    const StateSpace s(2, {"a", "b"});
    CHECK(s.find("b") == 1u);
    CHECK_FALSE(s.find("c").has_value());
    CHECK(StateSpace(3).label(2) == "2");
}

TEST_CASE("to_stochastic: row normalization")
{
    const WeightedDigraph g(StateSpace(3),
                            {{0, 1, Rational(2)}, {0, 2, Rational(2)}, {1, 0, Rational(1)}, {2, 0, Rational(1)}});
    CHECK(to_stochastic<Rational>(g) == exact({{"0", "1/2", "1/2"}, {"1", "0", "0"}, {"1", "0", "0"}}));
}

TEST_CASE("to_stochastic: dangling policies")
{
    const WeightedDigraph single(StateSpace(1), {});
    CHECK(to_stochastic<Rational>(single, DanglingPolicy::self_loop) == exact({{"1"}}));

    const WeightedDigraph g(StateSpace(3), {{0, 1, Rational(1)}, {1, 0, Rational(1)}});
    const ExactMatrix uniform = to_stochastic<Rational>(g, DanglingPolicy::uniform_row);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(uniform(2, j) == R("1/3"));
    }
    CHECK(to_stochastic<Rational>(g)(2, 2) == 1);
    CHECK(parse_dangling_policy("uniform_row") == DanglingPolicy::uniform_row);
    CHECK(kind_of([] { parse_dangling_policy("drop"); }) == ErrorKind::parse);
}

TEST_CASE("stochastic matrix validation")
{
    CHECK(kind_of([] { exact({{"1/2", "1/3"}, {"0", "1"}}); }) == ErrorKind::validation);
    CHECK(kind_of([] { exact({{"3/2", "-1/2"}, {"0", "1"}}); }) == ErrorKind::validation);
    Matrix<double> near(2, 2, 0.5);
    near(0, 0) = 0.5 + 1e-13;
    CHECK_NOTHROW(FloatMatrix{near});
    near(0, 0) = 0.5 + 1e-9;
    CHECK(kind_of([&] { FloatMatrix{near}; }) == ErrorKind::validation);
}

TEST_CASE("classify_states: examples")
{
    const ClassPartition two = classify_states(two_cycle_plus_absorber());
    CHECK(two.closed_classes == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
    CHECK(two.transient.empty());

    const ClassPartition leaky = classify_states(leaky_absorber());
    CHECK(leaky.closed_classes == std::vector<std::vector<std::size_t>>{{0}, {1}});
    CHECK(leaky.transient == std::vector<std::size_t>{2});

    const ExactMatrix cycle4 =
        exact({{"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}, {"1", "0", "0", "0"}});
    const ClassPartition one = classify_states(cycle4);
    CHECK(one.closed_classes == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3}});
    CHECK(one.transient.empty());
}

TEST_CASE("classify_states: classes ordered by smallest member")
{
    const ExactMatrix p = exact({{"1/2", "0", "1/2"}, {"0", "1", "0"}, {"1", "0", "0"}});
    const ClassPartition part = classify_states(p);
    CHECK(part.closed_classes == std::vector<std::vector<std::size_t>>{{0, 2}, {1}});
    CHECK(part.class_of(2) == 0u);
    CHECK(part.class_of(1) == 1u);
}

TEST_CASE("is_irreducible: examples")
{
    CHECK(is_irreducible(exact({{"0", "1"}, {"1", "0"}})));
    CHECK_FALSE(is_irreducible(exact({{"1", "0"}, {"0", "1"}})));
    CHECK_FALSE(is_irreducible(two_cycle_plus_absorber()));
}

TEST_CASE("classify_states: floating threshold ignores round-off entries")
{
    Matrix<double> m(2, 2, 0.0);
    m(0, 0) = 1.0 - 1e-16;
    m(0, 1) = 1e-16;
    m(1, 1) = 1.0;
    const FloatMatrix p(m);
    const ClassPartition part = classify_states(p);
    CHECK(part.closed_classes == std::vector<std::vector<std::size_t>>{{0}, {1}});
}

TEST_CASE("classify_states: partition invariants on random matrices")
{
    Rng rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 9);
        const ExactMatrix p = random_stochastic(n, rng, 0.25);
        const ClassPartition part = classify_states(p);
        std::vector<int> hits(n, 0);
        for (const auto& c : part.closed_classes) {
            REQUIRE_FALSE(c.empty());
            for (auto v : c) {
                ++hits[v];
                Rational inside(0);
                for (auto u : c) {
                    inside += p(v, u);
                }
                CHECK(inside == 1);
            }
            CHECK(is_irreducible(restrict_to(p, c)));
        }
        for (auto t : part.transient) {
            ++hits[t];
            CHECK(reaches_closed(p, part, t));
        }
        CHECK(part.m() >= 1);
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
}

TEST_CASE("strongly connected components on an adjacency list")
{
    const Adjacency adj{{1}, {2}, {0, 3}, {4}, {3}};
    auto sccs = strongly_connected_components(adj);
    for (auto& c : sccs) {
        std::sort(c.begin(), c.end());
    }
    std::sort(sccs.begin(), sccs.end());
    CHECK(sccs == std::vector<std::vector<std::size_t>>{{0, 1, 2}, {3, 4}});
    const ClassPartition part = classify_support(adj);
    CHECK(part.closed_classes == std::vector<std::vector<std::size_t>>{{3, 4}});
    CHECK(part.transient == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("strongly connected components: long chain does not overflow the stack")
{
    const std::size_t n = 200000;
    Adjacency adj(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        adj[i].push_back(i + 1);
    }
    adj[n - 1].push_back(0);
    CHECK(is_strongly_connected(adj));
}

TEST_CASE("matrix JSON: parse, exact decimals, round trip")
{
    const ExactMatrix m = parse_matrix_json(R"({"n": 2, "rows": [["1/2", 0.5], [0.1, "9/10"]]})");
    CHECK(m(0, 0) == R("1/2"));
    CHECK(m(0, 1) == R("1/2"));
    CHECK(m(1, 0) == R("1/10"));
    const std::string text = serialize_matrix_json(m);
    CHECK(parse_matrix_json(text) == m);
    CHECK(serialize_matrix_json(parse_matrix_json(text)) == text);
}

TEST_CASE("matrix JSON: errors")
{
    CHECK(kind_of([] { parse_matrix_json("{"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_matrix_json(R"({"n": 3, "rows": [[1]]})"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_matrix_json(R"({"rows": [[1, 0]]})"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_matrix_json(R"({"rows": [["1/2", "1/4"], [0, 1]]})"); }) == ErrorKind::validation);
    CHECK(kind_of([] { parse_matrix_json(R"({"rows": [[true, 0], [0, 1]]})"); }) == ErrorKind::parse);
}

TEST_CASE("rational text forms")
{
    CHECK(to_string(R("6/4")) == "3/2");
    CHECK(to_string(Rational(0)) == "0/1");
    CHECK(to_string(Rational(3)) == "3/1");
    CHECK(R("-2.5e-1") == R("-1/4"));
    CHECK(R("12") == 12);
    CHECK(R("0089") == 89);
    CHECK(R("0.0089") == R("89/10000"));
    CHECK(rational_from_double(0.1) == R("1/10"));
    CHECK(kind_of([] { parse_rational("1/0"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_rational("abc"); }) == ErrorKind::parse);
}
