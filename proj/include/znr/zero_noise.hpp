#pragma once

#include "znr/classify.hpp"
#include "znr/stationary.hpp"
#include "znr/stochastic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace znr {

/// How the class-level chain was built: `plain` from Q on closed classes,
/// `extended` routing jumps into transient states through absorption,
/// `personalized` from a personalization vector, `uniform` for the
/// equal-mass prediction.
enum class GammaMode { plain, extended, personalized, uniform };

std::string_view to_string(GammaMode mode);

/// Chain over closed classes with its stationary law.
template <Scalar T>
struct GammaChain {
    Matrix<T> gamma;
    Distribution<T> pi_gamma;
    GammaMode mode;
};

/// Zero-noise limit with the pieces it is assembled from. For every v in
/// class k, node_limit(v) = per_class_stationary[k](v) * class_masses[k];
/// transient states get 0.
template <Scalar T>
struct LimitReport {
    StateSpace states;
    ClassPartition partition;
    std::vector<Distribution<T>> per_class_stationary;
    GammaChain<T> gamma_chain;
    std::vector<T> class_masses;
    Distribution<T> node_limit;
    /// theorem3 | theorem2 | extended | personalized
    std::string mode;
    /// True when the report is a formula's prediction rather than a value the
    /// exact oracle supports.
    bool prediction = false;
};

namespace detail {

template <Scalar T>
bool structurally_irreducible(const Matrix<T>& gamma)
{
    Adjacency adj(gamma.rows());
    for (std::size_t i = 0; i < gamma.rows(); ++i) {
        for (std::size_t j = 0; j < gamma.cols(); ++j) {
            if (scalar_traits<T>::positive(gamma(i, j))) {
                adj[i].push_back(j);
            }
        }
    }
    return is_strongly_connected(adj);
}

template <Scalar T>
GammaChain<T> make_gamma_chain(Matrix<T> gamma, GammaMode mode)
{
    if (!structurally_irreducible(gamma)) {
        fail(ErrorKind::gamma_reducible, "class chain is not irreducible");
    }
    StochasticMatrix<T> chain(StateSpace(gamma.rows()), gamma);
    Distribution<T> pi = stationary_direct(chain);
    return GammaChain<T>{std::move(gamma), std::move(pi), mode};
}

inline void require_no_transients(const ClassPartition& part, const char* what)
{
    if (!part.transient.empty()) {
        fail(ErrorKind::transient_states_present,
             std::string(what) + ": P has " + std::to_string(part.transient.size()) +
                 " transient state(s); use extended mode");
    }
}

template <Scalar T>
LimitReport<T> assemble(const StochasticMatrix<T>& p, ClassPartition part, GammaChain<T> chain, std::string mode,
                        bool prediction = false)
{
    auto per_class = class_stationary(p, part);
    std::vector<T> masses = chain.pi_gamma.values();
    std::vector<T> node(p.size(), T(0));
    for (std::size_t k = 0; k < part.m(); ++k) {
        for (auto v : part.closed_classes[k]) {
            node[v] = per_class[k][v] * masses[k];
        }
    }
    Distribution<T> node_limit = scalar_traits<T>::exact ? Distribution<T>(std::move(node))
                                                         : Distribution<T>::normalized(std::move(node));
    return LimitReport<T>{p.states(),           std::move(part),       std::move(per_class),
                          std::move(chain),     std::move(masses),     std::move(node_limit),
                          std::move(mode),      prediction};
}

} // namespace detail

/// Gamma(i, j) = (1/|C_i|) sum_{x in C_i, y in C_j} Q(x, y). Requires a
/// partition without transient states and an irreducible result.
template <Scalar T>
GammaChain<T> build_gamma(const StochasticMatrix<T>& q, const ClassPartition& part)
{
    detail::require_no_transients(part, "build_gamma");
    if (part.state_count() != q.size()) {
        fail(ErrorKind::validation, "Q and the partition disagree on the number of states");
    }
    const std::size_t m = part.m();
    Matrix<T> gamma(m, m, T(0));
    for (std::size_t i = 0; i < m; ++i) {
        const auto& ci = part.closed_classes[i];
        for (std::size_t j = 0; j < m; ++j) {
            T sum(0);
            for (auto x : ci) {
                for (auto y : part.closed_classes[j]) {
                    sum += q(x, y);
                }
            }
            gamma(i, j) = sum / T(static_cast<long>(ci.size()));
        }
    }
    return detail::make_gamma_chain(std::move(gamma), GammaMode::plain);
}

/// Zero-noise limit of (1-eps)P + eps Q for P without transient states:
/// node_limit(v) = pi_k(v) * pi_Gamma(k).
template <Scalar T>
LimitReport<T> zero_noise_limit(const StochasticMatrix<T>& p, const StochasticMatrix<T>& q)
{
    ClassPartition part = classify_states(p);
    detail::require_no_transients(part, "zero_noise_limit");
    GammaChain<T> chain = build_gamma(q, part);
    return detail::assemble(p, std::move(part), std::move(chain), "theorem3");
}

/// Equal-mass formula: every closed class receives 1/m, transient states 0.
/// Reported as a prediction; it disagrees with the exact limit whenever the
/// uniform kernel meets classes of unequal size.
template <Scalar T>
LimitReport<T> equal_mass_prediction(const StochasticMatrix<T>& p)
{
    ClassPartition part = classify_states(p);
    const std::size_t m = part.m();
    const T share = T(1) / T(static_cast<long>(m));
    Matrix<T> gamma(m, m, share);
    GammaChain<T> chain{gamma, Distribution<T>(std::vector<T>(m, share)), GammaMode::uniform};
    return detail::assemble(p, std::move(part), std::move(chain), "theorem2", true);
}

/// Gamma for the personalised kernel Q = 1 nu^T: every row is
/// (nu(C_1), ..., nu(C_m)), so pi_Gamma(k) = nu(C_k).
template <Scalar T>
GammaChain<T> personalization_gamma(const Distribution<T>& nu, const ClassPartition& part)
{
    detail::require_no_transients(part, "personalization_gamma");
    if (nu.size() != part.state_count()) {
        fail(ErrorKind::validation, "personalization vector has wrong length");
    }
    const std::size_t m = part.m();
    std::vector<T> mass(m, T(0));
    for (std::size_t k = 0; k < m; ++k) {
        for (auto v : part.closed_classes[k]) {
            mass[k] += nu[v];
        }
        if (!scalar_traits<T>::positive(mass[k])) {
            fail(ErrorKind::gamma_reducible,
                 "personalization vector puts no mass on closed class " + std::to_string(k));
        }
    }
    Matrix<T> gamma(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            gamma(i, j) = mass[j];
        }
    }
    Distribution<T> pi = scalar_traits<T>::exact ? Distribution<T>(mass) : Distribution<T>::normalized(mass);
    return GammaChain<T>{std::move(gamma), std::move(pi), GammaMode::personalized};
}

template <Scalar T>
LimitReport<T> personalized_limit(const StochasticMatrix<T>& p, const Distribution<T>& nu)
{
    ClassPartition part = classify_states(p);
    GammaChain<T> chain = personalization_gamma(nu, part);
    return detail::assemble(p, std::move(part), std::move(chain), "personalized");
}

/// Class chain that also accounts for perturbation jumps landing on transient
/// states: such mass is forwarded to the closed classes according to the
/// unperturbed absorption probabilities,
///   G(i, j) = (1/|C_i|) sum_{x in C_i} [ Q(x, C_j) + sum_t Q(x, t) A(t, j) ].
template <Scalar T>
GammaChain<T> extended_gamma(const StochasticMatrix<T>& p, const StochasticMatrix<T>& q, const ClassPartition& part)
{
    if (p.size() != q.size() || part.state_count() != p.size()) {
        fail(ErrorKind::validation, "P, Q and the partition disagree on the number of states");
    }
    AbsorptionTable<T> absorb = absorption_probabilities(p, part);
    const std::size_t m = part.m();
    Matrix<T> gamma(m, m, T(0));
    for (std::size_t i = 0; i < m; ++i) {
        const auto& ci = part.closed_classes[i];
        for (std::size_t j = 0; j < m; ++j) {
            T sum(0);
            for (auto x : ci) {
                for (auto y : part.closed_classes[j]) {
                    sum += q(x, y);
                }
                for (std::size_t r = 0; r < absorb.transient.size(); ++r) {
                    sum += q(x, absorb.transient[r]) * absorb.probabilities(r, j);
                }
            }
            gamma(i, j) = sum / T(static_cast<long>(ci.size()));
        }
    }
    return detail::make_gamma_chain(std::move(gamma), GammaMode::extended);
}

template <Scalar T>
LimitReport<T> extended_zero_noise_limit(const StochasticMatrix<T>& p, const StochasticMatrix<T>& q)
{
    ClassPartition part = classify_states(p);
    GammaChain<T> chain = extended_gamma(p, q, part);
    return detail::assemble(p, std::move(part), std::move(chain), "extended");
}

/// Block kernel: Q(x, y) = block(i, j) for x in C_i, y in C_j. Rows of the
/// block matrix must satisfy sum_j block(i, j) |C_j| = 1.
template <Scalar T>
StochasticMatrix<T> expand_block_kernel(const StateSpace& states, const ClassPartition& part, const Matrix<T>& block)
{
    detail::require_no_transients(part, "block kernel");
    const std::size_t m = part.m();
    if (block.rows() != m || block.cols() != m) {
        fail(ErrorKind::validation, "block matrix is " + std::to_string(block.rows()) + "x" +
                                        std::to_string(block.cols()) + " but P has " + std::to_string(m) +
                                        " closed classes");
    }
    Matrix<T> q(states.size(), states.size(), T(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (auto x : part.closed_classes[i]) {
                for (auto y : part.closed_classes[j]) {
                    q(x, y) = block(i, j);
                }
            }
        }
    }
    return StochasticMatrix<T>(states, std::move(q));
}

} // namespace znr
