#pragma once

#include "znr/arborescence.hpp"
#include "znr/stationary.hpp"
#include "znr/zero_noise.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace znr {

/// (1 - eps) P + eps Q for eps in (0, 1].
template <Scalar T>
StochasticMatrix<T> perturbed_matrix(const StochasticMatrix<T>& p, const StochasticMatrix<T>& q, const T& eps)
{
    if (!(eps > 0) || eps > 1) {
        fail(ErrorKind::eps_out_of_range, "eps must lie in (0, 1]");
    }
    if (p.size() != q.size()) {
        fail(ErrorKind::validation, "P and Q must have the same number of states");
    }
    const std::size_t n = p.size();
    Matrix<T> m(n, n);
    const T keep = T(1) - eps;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = keep * p(i, j) + eps * q(i, j);
        }
    }
    if constexpr (!scalar_traits<T>::exact) {
        // Renormalise so rounding never trips row-sum validation.
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                s += m(i, j);
            }
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) /= s;
            }
        }
    }
    return StochasticMatrix<T>(p.states(), std::move(m));
}

template <Scalar T>
struct SweepResult {
    std::vector<T> eps_grid;
    std::vector<Distribution<T>> pi_table;
    Distribution<T> predicted_limit;
    /// "theorem3" when P has no transient states, "extended" otherwise.
    std::string predicted_mode;
    /// L-infinity distance of each pi^eps from predicted_limit.
    std::vector<T> errors;
    /// Least-squares slope of log(error) against log(eps) over the points
    /// above the numerical noise floor; empty when fewer than two remain.
    std::optional<double> fitted_slope;
    /// max error / eps over the grid.
    double fitted_constant = 0.0;
    /// Derivative estimate at eps = 0 from the two smallest grid points.
    std::vector<T> first_order;
    /// Affine extrapolation of pi^eps to eps = 0 from the two smallest points.
    std::vector<T> extrapolated_limit;
};

/// Errors below this are treated as zero: rounding in the eps-dependent solve
/// grows like machine epsilon / eps.
inline double sweep_noise_floor(double eps)
{
    return 16.0 * DBL_EPSILON / eps;
}

namespace detail {

template <Scalar T>
bool below_noise(const T& error, const T& eps)
{
    if constexpr (scalar_traits<T>::exact) {
        return error == 0;
    } else {
        return error <= sweep_noise_floor(eps);
    }
}

template <Scalar T>
std::vector<T> richardson_first_order(const std::vector<T>& limit, const std::vector<T>& pi1, const T& e1,
                                      const std::vector<T>& pi2, const T& e2)
{
    // D(e) = (pi^e - pi^0)/e = pi'(0) + pi''(0) e / 2 + O(e^2); eliminating the
    // linear term leaves an O(e1 e2) error.
    std::vector<T> out(limit.size());
    for (std::size_t i = 0; i < limit.size(); ++i) {
        T d1 = (pi1[i] - limit[i]) / e1;
        T d2 = (pi2[i] - limit[i]) / e2;
        out[i] = (e1 * d2 - e2 * d1) / (e1 - e2);
    }
    return out;
}

template <Scalar T>
LimitReport<T> predicted_limit_report(const StochasticMatrix<T>& p, const StochasticMatrix<T>& q)
{
    ClassPartition part = classify_states(p);
    if (part.transient.empty()) {
        return zero_noise_limit(p, q);
    }
    return extended_zero_noise_limit(p, q);
}

template <Scalar T>
void validate_eps(const T& eps)
{
    if (!(eps > 0) || !(eps < 1)) {
        fail(ErrorKind::eps_out_of_range, "eps grid values must lie in (0, 1)");
    }
}

} // namespace detail

/// Solves for pi^eps at each grid point and compares against the predicted
/// zero-noise limit (Gamma-chain mode, extended when P has transient states).
template <Scalar T>
SweepResult<T> epsilon_sweep(const StochasticMatrix<T>& p, const StochasticMatrix<T>& q, std::vector<T> grid)
{
    if (grid.empty()) {
        fail(ErrorKind::validation, "eps grid is empty");
    }
    for (const auto& e : grid) {
        detail::validate_eps(e);
    }
    std::sort(grid.begin(), grid.end(), [](const T& a, const T& b) { return a > b; });
    if (std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
        fail(ErrorKind::validation, "eps grid contains duplicates");
    }

    LimitReport<T> predicted = detail::predicted_limit_report(p, q);
    SweepResult<T> out{grid, {}, predicted.node_limit, predicted.mode, {}, std::nullopt, 0.0, {}, {}};
    const auto& limit = predicted.node_limit.values();

    std::vector<double> xs, ys;
    for (const auto& eps : grid) {
        Distribution<T> pi = stationary_direct(perturbed_matrix(p, q, eps));
        T err(0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            err = std::max<T>(err, scalar_traits<T>::abs(pi[i] - limit[i]));
        }
        const double e = scalar_traits<T>::to_double(eps);
        const double ed = scalar_traits<T>::to_double(err);
        out.fitted_constant = std::max(out.fitted_constant, ed / e);
        if (!detail::below_noise(err, eps)) {
            xs.push_back(std::log(e));
            ys.push_back(std::log(ed));
        }
        out.errors.push_back(std::move(err));
        out.pi_table.push_back(std::move(pi));
    }
    if (xs.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        out.fitted_slope = sxy / sxx;
    }
    if (grid.size() >= 2) {
        const std::size_t a = grid.size() - 2;
        const std::size_t b = grid.size() - 1;
        const T& e1 = grid[a];
        const T& e2 = grid[b];
        const auto& pi1 = out.pi_table[a].values();
        const auto& pi2 = out.pi_table[b].values();
        out.first_order = detail::richardson_first_order(limit, pi1, e1, pi2, e2);
        for (std::size_t i = 0; i < p.size(); ++i) {
            out.extrapolated_limit.push_back((e1 * pi2[i] - e2 * pi1[i]) / (e1 - e2));
        }
    }
    return out;
}

/// Estimate of d pi^eps / d eps at 0 from two solves, Richardson-extrapolated
/// against the predicted zero-noise limit.
template <Scalar T>
std::vector<T> first_order_estimate(const StochasticMatrix<T>& p, const StochasticMatrix<T>& q, const T& eps1,
                                    const T& eps2)
{
    detail::validate_eps(eps1);
    detail::validate_eps(eps2);
    if (eps1 == eps2) {
        fail(ErrorKind::eps_out_of_range, "first-order estimate needs two distinct eps values");
    }
    const auto limit = detail::predicted_limit_report(p, q).node_limit.values();
    const auto pi1 = stationary_direct(perturbed_matrix(p, q, eps1)).values();
    const auto pi2 = stationary_direct(perturbed_matrix(p, q, eps2)).values();
    return detail::richardson_first_order(limit, pi1, eps1, pi2, eps2);
}

struct FirstOrderComparison {
    std::vector<double> estimate;
    std::vector<Rational> exact;
    /// ||estimate - exact||_inf / ||exact||_inf (absolute error when exact is 0).
    double relative_error = 0.0;
};

/// Numeric estimate against the exact derivative of the root-polynomial ratio.
FirstOrderComparison compare_first_order(const ExactMatrix& p, const ExactMatrix& q, double eps1, double eps2,
                                         const Guards& guards = default_guards());

struct ConvergenceReport {
    std::vector<double> eps;
    std::vector<double> errors;
    std::optional<double> slope;
    double constant = 0.0;
    bool pass = false;
    std::string verdict;
    std::string predicted_mode;
};

template <Scalar T>
ConvergenceReport convergence_report(const SweepResult<T>& s)
{
    ConvergenceReport r;
    r.slope = s.fitted_slope;
    r.constant = s.fitted_constant;
    r.predicted_mode = s.predicted_mode;
    bool all_noise = true;
    bool bounded = true;
    for (std::size_t i = 0; i < s.eps_grid.size(); ++i) {
        const double e = scalar_traits<T>::to_double(s.eps_grid[i]);
        const double err = scalar_traits<T>::to_double(s.errors[i]);
        r.eps.push_back(e);
        r.errors.push_back(err);
        all_noise = all_noise && detail::below_noise(s.errors[i], s.eps_grid[i]);
        bounded = bounded && err <= r.constant * e * (1 + 1e-12);
    }
    if (all_noise) {
        r.pass = true;
        r.verdict = "exact for all tested eps";
    } else if (r.slope && *r.slope >= 0.8 && bounded) {
        r.pass = true;
        r.verdict = "pass: max error <= C*eps with C = " + std::to_string(r.constant) + ", slope " +
                    std::to_string(*r.slope);
    } else {
        r.pass = false;
        r.verdict = "fail: slope " + (r.slope ? std::to_string(*r.slope) : std::string("undefined")) +
                    " below 0.8";
    }
    return r;
}

std::string to_text(const ConvergenceReport& r);

/// Grid syntax: comma-separated values ("0.1,1/100"), or "a..b" for every
/// power of ten from a to b, or "a..b:k" for k log-spaced points. Values are
/// returned exactly, in descending order.
std::vector<Rational> parse_eps_grid(std::string_view text);

/// 1e-1 .. 1e-6 for floating mode, {1/10, 1/100, 1/1000} for exact mode.
std::vector<Rational> default_eps_grid(NumericMode mode);

} // namespace znr
