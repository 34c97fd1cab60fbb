#include "support/fixtures.hpp"

#include "znr/adjudicate.hpp"
#include "znr/arborescence.hpp"
#include "znr/zero_noise.hpp"

#include <doctest.h>

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

const MethodResult& method(const AdjudicationReport& r, const std::string& name)
{
    for (const auto& m : r.methods) {
        if (m.method == name) {
            return m;
        }
    }
    FAIL("missing method " << name);
    return r.methods.front();
}

template <Scalar T>
void check_assembly(const LimitReport<T>& r)
{
    T total(0);
    for (const auto& v : r.node_limit.values()) {
        total += v;
    }
    CHECK(total == T(1));
    for (std::size_t k = 0; k < r.partition.m(); ++k) {
        T mass(0);
        for (auto v : r.partition.closed_classes[k]) {
            mass += r.node_limit[v];
            CHECK(r.node_limit[v] == r.per_class_stationary[k][v] * r.class_masses[k]);
        }
        CHECK(mass == r.class_masses[k]);
    }
    for (auto t : r.partition.transient) {
        CHECK(r.node_limit[t] == 0);
    }
    CHECK(r.class_masses == r.gamma_chain.pi_gamma.values());
}

} // namespace

TEST_CASE("build_gamma: uniform kernel with class sizes (2,1)")
{
    const ExactMatrix p = two_cycle_plus_absorber();
    const GammaChain<Rational> g = build_gamma(uniform_kernel<Rational>(p.states()), classify_states(p));
    CHECK(g.gamma == rational_matrix({{"2/3", "1/3"}, {"2/3", "1/3"}}));
    CHECK(g.pi_gamma.values() == rationals({"2/3", "1/3"}));
    CHECK(g.mode == GammaMode::plain);
}

TEST_CASE("build_gamma: block kernel")
{
    const ExactMatrix p = two_cycle_plus_absorber();
    const ClassPartition part = classify_states(p);
    const ExactMatrix q =
        expand_block_kernel(p.states(), part, rational_matrix({{"1/4", "1/2"}, {"1/4", "1/2"}}));
    const GammaChain<Rational> g = build_gamma(q, part);
    CHECK(g.gamma == rational_matrix({{"1/2", "1/2"}, {"1/2", "1/2"}}));
    CHECK(g.pi_gamma.values() == rationals({"1/2", "1/2"}));
}

TEST_CASE("build_gamma: errors")
{
    const ExactMatrix p = two_cycle_plus_absorber();
    const ClassPartition part = classify_states(p);
    const ExactMatrix no_mass_on_c2 =
        personalized_kernel<Rational>(p.states(), std::span<const Rational>(rationals({"1/2", "1/2", "0"})));
    CHECK(kind_of([&] { build_gamma(no_mass_on_c2, part); }) == ErrorKind::gamma_reducible);
    const ExactMatrix leaky = leaky_absorber();
    CHECK(kind_of([&] { build_gamma(uniform_kernel<Rational>(leaky.states()), classify_states(leaky)); }) ==
          ErrorKind::transient_states_present);
}

TEST_CASE("zero_noise_limit: examples")
{
    const ExactMatrix p = two_cycle_plus_absorber();
    const auto uniform = zero_noise_limit(p, uniform_kernel<Rational>(p.states()));
    CHECK(uniform.node_limit.values() == rationals({"1/3", "1/3", "1/3"}));
    CHECK(uniform.class_masses == rationals({"2/3", "1/3"}));
    CHECK(uniform.mode == "theorem3");
    CHECK_FALSE(uniform.prediction);
    check_assembly(uniform);

    const auto block = zero_noise_limit(p, block_example_kernel());
    CHECK(block.gamma_chain.gamma == rational_matrix({{"2/3", "1/3"}, {"1", "0"}}));
    CHECK(block.class_masses == rationals({"3/4", "1/4"}));
    CHECK(block.node_limit.values() == rationals({"3/8", "3/8", "1/4"}));

    const ExactMatrix star = three_state_star();
    CHECK(zero_noise_limit(star, uniform_kernel<Rational>(star.states())).node_limit == mctt_stationary(star));
}

TEST_CASE("zero_noise_limit: floating mode agrees with exact")
{
    const ExactMatrix p = two_cycle_plus_absorber();
    const auto r = zero_noise_limit(p.cast<double>(), block_example_kernel().cast<double>());
    CHECK(r.node_limit[0] == doctest::Approx(0.375));
    CHECK(r.node_limit[2] == doctest::Approx(0.25));
}

TEST_CASE("zero_noise_limit: transient states are refused")
{
    const ExactMatrix p = leaky_absorber();
    CHECK(kind_of([&] { zero_noise_limit(p, uniform_kernel<Rational>(p.states())); }) ==
          ErrorKind::transient_states_present);
}

TEST_CASE("equal_mass_prediction: examples")
{
    const auto two = equal_mass_prediction(two_cycle_plus_absorber());
    CHECK(two.node_limit.values() == rationals({"1/4", "1/4", "1/2"}));
    CHECK(two.prediction);
    CHECK(two.mode == "theorem2");
    check_assembly(two);

    const ExactMatrix id = ExactMatrix(Matrix<Rational>::identity(2));
    CHECK(equal_mass_prediction(id).node_limit.values() == rationals({"1/2", "1/2"}));

    const ExactMatrix star = three_state_star();
    CHECK(equal_mass_prediction(star).node_limit == mctt_stationary(star));

    const auto leaky = equal_mass_prediction(leaky_absorber());
    CHECK(leaky.node_limit.values() == rationals({"1/2", "1/2", "0"}));
}

TEST_CASE("personalization_gamma: examples")
{
    const ExactMatrix p = two_cycle_plus_absorber();
    const ClassPartition part = classify_states(p);
    const Distribution<Rational> nu(rationals({"0.2", "0.3", "0.5"}));
    const auto g = personalization_gamma(nu, part);
    CHECK(g.pi_gamma.values() == rationals({"1/2", "1/2"}));
    CHECK(g.mode == GammaMode::personalized);

    const Distribution<Rational> flat(rationals({"1/3", "1/3", "1/3"}));
    CHECK(personalization_gamma(flat, part).pi_gamma.values() == rationals({"2/3", "1/3"}));

    const Distribution<Rational> point(rationals({"1", "0", "0"}));
    CHECK(kind_of([&] { personalization_gamma(point, part); }) == ErrorKind::gamma_reducible);
}

TEST_CASE("personalized_limit: assembled report")
{
    const ExactMatrix p = two_cycle_plus_absorber();
    const auto r = personalized_limit(p, Distribution<Rational>(rationals({"0.2", "0.3", "0.5"})));
    CHECK(r.node_limit.values() == rationals({"1/4", "1/4", "1/2"}));
    CHECK(r.mode == "personalized");
    check_assembly(r);
}

TEST_CASE("extended_gamma: leaky absorber fixture")
{
    const ExactMatrix p = leaky_absorber();
    const ExactMatrix q = uniform_kernel<Rational>(p.states());
    const auto g = extended_gamma(p, q, classify_states(p));
    CHECK(g.gamma == rational_matrix({{"5/9", "4/9"}, {"5/9", "4/9"}}));
    CHECK(g.pi_gamma.values() == rationals({"5/9", "4/9"}));
    CHECK(g.mode == GammaMode::extended);
    const auto r = extended_zero_noise_limit(p, q);
    CHECK(r.node_limit.values() == rationals({"5/9", "4/9", "0"}));
    CHECK(exact_limit_from_polynomials(p, q) == r.node_limit);
    check_assembly(r);
}

TEST_CASE("extended_gamma: no transient states reduces to build_gamma")
{
    Rng rng(51);
    for (int trial = 0; trial < 15; ++trial) {
        const auto inst = random_reducible(random_sizes(2 + static_cast<std::size_t>(trial % 2), 3, rng), 0, rng);
        const ExactMatrix q = random_dense_kernel(inst.p.size(), rng);
        const ClassPartition part = classify_states(inst.p);
        const auto plain = build_gamma(q, part);
        const auto ext = extended_gamma(inst.p, q, part);
        CHECK(plain.gamma == ext.gamma);
        CHECK(plain.pi_gamma == ext.pi_gamma);
    }
}

TEST_CASE("extended_gamma: uniform kernel closed form")
{
    Rng rng(52);
    for (int trial = 0; trial < 15; ++trial) {
        const auto inst = random_reducible(random_sizes(2, 3, rng), 1 + static_cast<std::size_t>(trial % 3), rng);
        const ClassPartition part = classify_states(inst.p);
        const std::size_t n = inst.p.size();
        const auto g = extended_gamma(inst.p, uniform_kernel<Rational>(inst.p.states()), part);
        const auto a = absorption_probabilities(inst.p, part);
        for (std::size_t j = 0; j < part.m(); ++j) {
            Rational expected(static_cast<long>(part.closed_classes[j].size()));
            for (std::size_t r = 0; r < a.transient.size(); ++r) {
                expected += a.probabilities(r, j);
            }
            expected /= static_cast<long>(n);
            CHECK(g.pi_gamma[j] == expected);
        }
    }
}

TEST_CASE("Theorem-3 limit matches the exact oracle on random block kernels")
{
    Rng rng(53);
    for (int trial = 0; trial < 12; ++trial) {
        const auto inst = random_reducible(random_sizes(2 + static_cast<std::size_t>(trial % 3), 3, rng), 0, rng);
        const ExactMatrix q = random_block_kernel(inst.p, rng);
        const auto r = zero_noise_limit(inst.p, q);
        check_assembly(r);
        CHECK(r.node_limit == exact_limit_from_polynomials(inst.p, q));
    }
}

TEST_CASE("personalization consistency and uniform closed form")
{
    Rng rng(54);
    for (int trial = 0; trial < 15; ++trial) {
        const auto inst = random_reducible(random_sizes(2 + static_cast<std::size_t>(trial % 3), 3, rng), 0, rng);
        const ClassPartition part = classify_states(inst.p);
        const auto nu = random_distribution(inst.p.size(), rng);
        const auto via_nu = personalization_gamma(Distribution<Rational>(nu), part);
        const auto via_q = build_gamma(personalized_kernel<Rational>(inst.p.states(), std::span<const Rational>(nu)), part);
        CHECK(via_nu.gamma == via_q.gamma);
        CHECK(via_nu.pi_gamma == via_q.pi_gamma);

        const auto uniform = build_gamma(uniform_kernel<Rational>(inst.p.states()), part);
        for (std::size_t k = 0; k < part.m(); ++k) {
            CHECK(uniform.pi_gamma[k] == Rational(static_cast<long>(part.closed_classes[k].size()),
                                                  static_cast<long>(inst.p.size())));
        }
    }
}

TEST_CASE("expand_block_kernel: validation")
{
    const ExactMatrix p = two_cycle_plus_absorber();
    const ClassPartition part = classify_states(p);
    CHECK(kind_of([&] { expand_block_kernel(p.states(), part, rational_matrix({{"1/2", "1/2"}, {"1/2", "1/2"}})); }) ==
          ErrorKind::validation);
    CHECK(kind_of([&] { expand_block_kernel(p.states(), part, rational_matrix({{"1"}})); }) == ErrorKind::validation);
}

TEST_CASE("adjudicate: two-cycle plus absorber with uniform kernel")
{
    const ExactMatrix p = two_cycle_plus_absorber();
    const AdjudicationReport r = adjudicate(p, uniform_kernel<Rational>(p.states()));
    CHECK(r.oracle_kind == "exact_polynomial");
    REQUIRE(r.oracle.size() == 3);
    for (const auto& v : r.oracle) {
        CHECK(std::get<Rational>(v) == R("1/3"));
    }
    const MethodResult& t3 = method(r, "theorem3");
    CHECK(t3.agrees);
    CHECK(std::get<Rational>(t3.max_deviation) == 0);
    const MethodResult& t2 = method(r, "theorem2");
    CHECK(t2.prediction);
    CHECK_FALSE(t2.agrees);
    CHECK(std::get<Rational>(t2.deviation[0]) == R("1/12"));
    CHECK(std::get<Rational>(t2.deviation[1]) == R("1/12"));
    CHECK(std::get<Rational>(t2.deviation[2]) == R("1/6"));
    CHECK(std::get<Rational>(t2.max_deviation) == R("1/6"));
    CHECK(t2.verdict.find("discrepant") == 0);
}

TEST_CASE("adjudicate: equal class sizes make both formulas agree")
{
    const ExactMatrix p = exact({{"0", "1", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "1/2", "1/2"}, {"0", "0", "1", "0"}});
    const AdjudicationReport r = adjudicate(p, uniform_kernel<Rational>(p.states()));
    CHECK(method(r, "theorem2").agrees);
    CHECK(method(r, "theorem3").agrees);
}

TEST_CASE("adjudicate: personalized kernel")
{
    const ExactMatrix p = two_cycle_plus_absorber();
    const auto nu = rationals({"1/10", "3/10", "3/5"});
    const AdjudicationReport r = adjudicate(p, personalized_kernel<Rational>(p.states(), std::span<const Rational>(nu)));
    CHECK(method(r, "theorem3").agrees);
    CHECK(std::get<Rational>(method(r, "theorem3").max_deviation) == 0);
}

TEST_CASE("adjudicate: transient states mark theorem3 not applicable")
{
    const ExactMatrix p = leaky_absorber();
    const AdjudicationReport r = adjudicate(p, uniform_kernel<Rational>(p.states()));
    CHECK(method(r, "theorem3").error.has_value());
    CHECK(method(r, "extended").agrees);
}

TEST_CASE("adjudicate: guard fallback uses the sweep oracle")
{
    Guards tiny;
    tiny.symbolic_nodes = 2;
    const ExactMatrix p = two_cycle_plus_absorber();
    const AdjudicationReport r = adjudicate(p, block_example_kernel(), tiny);
    CHECK(r.oracle_kind == "sweep_extrapolation");
    CHECK(r.tolerance > 0.0);
    CHECK(method(r, "theorem3").agrees);
    CHECK(to_double(r.oracle[2]) == doctest::Approx(0.25).epsilon(1e-4));
}

TEST_CASE("adjudicate: kernels whose rows vary inside a class are flagged")
{
    const ExactMatrix p = exact({{"0", "1/2", "1/2", "0"}, {"1", "0", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "0", "1"}});
    const ExactMatrix q = exact({{"0", "0", "0", "1"},
                                 {"1/4", "1/4", "1/4", "1/4"},
                                 {"1/4", "1/4", "1/4", "1/4"},
                                 {"1/4", "1/4", "1/4", "1/4"}});
    CHECK(exact_limit_from_polynomials(p, q).values() == rationals({"3/11", "3/22", "3/22", "5/11"}));
    CHECK(zero_noise_limit(p, q).class_masses == rationals({"3/5", "2/5"}));
    const AdjudicationReport r = adjudicate(p, q);
    CHECK_FALSE(method(r, "theorem3").agrees);
    CHECK(method(r, "theorem3").verdict.find("discrepant") == 0);
}
