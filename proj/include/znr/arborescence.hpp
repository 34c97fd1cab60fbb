#pragma once

#include "znr/classify.hpp"
#include "znr/graph.hpp"
#include "znr/linalg.hpp"
#include "znr/polynomial.hpp"
#include "znr/stationary.hpp"
#include "znr/stochastic.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace znr {

/// Spanning in-tree: every state except the root points at exactly one
/// out-neighbour and following parents always ends at the root.
struct Arborescence {
    std::size_t root = 0;
    std::vector<std::optional<std::size_t>> parent;

    std::vector<std::pair<std::size_t, std::size_t>> edges() const;
    /// Nodes with no incoming tree edge.
    std::vector<std::size_t> leaves() const;

    friend bool operator==(const Arborescence&, const Arborescence&) = default;
};

/// Limits on exhaustive work. `enumeration_nodes` and `candidate_budget`
/// bound arborescence enumeration (the budget caps the product of non-root
/// out-degrees); `symbolic_nodes` bounds the size of chains handled by the
/// exact eps-polynomial routines.
struct Guards {
    std::size_t enumeration_nodes = 12;
    std::uint64_t candidate_budget = 10'000'000;
    std::size_t symbolic_nodes = 16;
    std::size_t skeleton_classes = 5;
    std::size_t leaf_check_nodes = 6;
};

/// Defaults, overridden by the ZNR_GUARD environment variable. Accepted forms:
/// a bare integer (candidate budget) or a comma list of key=value with keys
/// nodes, candidates, symbolic, classes, leaf.
Guards default_guards();
Guards parse_guards(std::string_view spec, Guards base = {});

/// Calls `visit` for every arborescence rooted at `root` whose edges lie in
/// `adj` (self-loops ignored), in lexicographic order of parent maps.
void for_each_arborescence(const Adjacency& adj, std::size_t root, const Guards& guards,
                           const std::function<void(const Arborescence&)>& visit);

std::vector<Arborescence> enumerate_arborescences(const Adjacency& adj, std::size_t root,
                                                  const Guards& guards = default_guards());
std::vector<Arborescence> enumerate_arborescences(const WeightedDigraph& g, std::size_t root,
                                                  const Guards& guards = default_guards());

template <Scalar T>
T arborescence_weight(const Arborescence& a, const StochasticMatrix<T>& w)
{
    T product(1);
    for (const auto& [src, dst] : a.edges()) {
        product *= w(src, dst);
    }
    return product;
}

/// (I - W) with row and column `root` removed.
template <Scalar T>
Matrix<T> reduced_laplacian(const StochasticMatrix<T>& w, std::size_t root)
{
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i != root) {
            keep.push_back(i);
        }
    }
    Matrix<T> l(keep.size(), keep.size(), T(0));
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = 0; b < keep.size(); ++b) {
            l(a, b) = (a == b ? T(1) : T(0)) - w(keep[a], keep[b]);
        }
    }
    return l;
}

/// |H(root)|, the total weight of arborescences rooted at `root`, computed as
/// the principal minor of I - W (matrix-tree theorem).
template <Scalar T>
T root_weight_minor(const StochasticMatrix<T>& w, std::size_t root)
{
    if (root >= w.size()) {
        fail(ErrorKind::validation, "root out of range");
    }
    T det = determinant(reduced_laplacian(w, root));
    if constexpr (!scalar_traits<T>::exact) {
        det = std::max(det, 0.0);
    }
    return det;
}

/// Stationary law from root weights: pi(i) = |H(i)| / sum_j |H(j)|.
template <Scalar T>
Distribution<T> mctt_stationary(const StochasticMatrix<T>& p)
{
    require_irreducible(p, "mctt_stationary");
    std::vector<T> weights(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        weights[i] = root_weight_minor(p, i);
    }
    return Distribution<T>::normalized(std::move(weights));
}

/// |H_root^eps| as an exact polynomial in eps for P_eps = (1-eps)P + eps Q,
/// via a fraction-free determinant over Q[eps].
EpsPolynomial perturbed_root_polynomial(const ExactMatrix& p, const ExactMatrix& q, std::size_t root,
                                        const Guards& guards = default_guards());

/// Same polynomial by brute force: sum over arborescences of the union
/// support of the product of edge polynomials.
EpsPolynomial perturbed_root_polynomial_enumerated(const ExactMatrix& p, const ExactMatrix& q, std::size_t root,
                                                   const Guards& guards = default_guards());

std::vector<EpsPolynomial> perturbed_root_polynomials(const ExactMatrix& p, const ExactMatrix& q,
                                                      const Guards& guards = default_guards());

/// Root polynomials together with the derived zero-noise quantities.
struct PolynomialLimit {
    std::vector<EpsPolynomial> root_polynomials;
    EpsPolynomial total;
    std::size_t leading_degree = 0;
    /// Exact lim_{eps->0} pi^eps.
    std::vector<Rational> limit;
    /// Exact d pi^eps / d eps at eps = 0.
    std::vector<Rational> first_order;
};

/// Throws NotIrreducible if the support of P_eps is not strongly connected.
PolynomialLimit polynomial_limit(const ExactMatrix& p, const ExactMatrix& q, const Guards& guards = default_guards());

/// Exact zero-noise limit: degree-d coefficients of the root polynomials,
/// normalised, where d is the lowest degree present in their sum.
Distribution<Rational> exact_limit_from_polynomials(const ExactMatrix& p, const ExactMatrix& q,
                                                    const Guards& guards = default_guards());

/// pi^eps evaluated exactly from the polynomial ratio.
std::vector<Rational> polynomial_ratio_at(const PolynomialLimit& limit, const Rational& eps);

struct SkeletonEntry {
    std::size_t root = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    /// Product of Gamma entries along the skeleton.
    Rational gamma_weight;
    /// Sum over labellings x_k in C_k of (prod_k |C_k|)^{-1} prod Q(x_u, x_v).
    Rational labelled_sum;
    bool equal = false;
};

struct SkeletonReport {
    std::vector<std::size_t> class_sizes;
    Matrix<Rational> gamma;
    std::vector<SkeletonEntry> skeletons;
    std::size_t equal_count = 0;
    std::size_t discrepant_count = 0;
};

/// Compares, for every arborescence skeleton over the m class nodes, the
/// Gamma-weight of the skeleton with the labelled sum over class
/// representatives. Requires Q constant on class blocks and no transients.
SkeletonReport skeleton_identity_check(const ExactMatrix& p, const ExactMatrix& q, const ClassPartition& part,
                                       const Guards& guards = default_guards());

} // namespace znr
