#pragma once

#include "znr/arborescence.hpp"
#include "znr/sweep.hpp"
#include "znr/zero_noise.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace znr {

/// Exact value, or a floating value when only the numeric oracle was usable.
using Number = std::variant<Rational, double>;

double to_double(const Number& x);

struct MethodResult {
    /// theorem2 | theorem3 | extended
    std::string method;
    bool prediction = false;
    /// Set when the method's preconditions fail (e.g. transient states).
    std::optional<std::string> error;
    std::vector<Rational> node_limit;
    std::vector<Rational> class_masses;
    std::vector<Number> deviation;
    Number max_deviation = Rational(0);
    bool agrees = false;
    std::string verdict;
};

struct AdjudicationReport {
    StateSpace states;
    ClassPartition partition;
    /// exact_polynomial when the root polynomials fit the guards, otherwise
    /// sweep_extrapolation.
    std::string oracle_kind;
    std::vector<Number> oracle;
    /// Agreement tolerance: 0 for the exact oracle, 10 * smallest eps otherwise.
    double tolerance = 0.0;
    std::vector<MethodResult> methods;
};

/// Runs every limit formula against the oracle and records per-node
/// deviations and a verdict line per method.
AdjudicationReport adjudicate(const ExactMatrix& p, const ExactMatrix& q, const Guards& guards = default_guards());

} // namespace znr
