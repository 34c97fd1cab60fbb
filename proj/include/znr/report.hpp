#pragma once

#include "znr/adjudicate.hpp"
#include "znr/arborescence.hpp"
#include "znr/classify.hpp"
#include "znr/models.hpp"
#include "znr/sweep.hpp"
#include "znr/zero_noise.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace znr {

using Json = nlohmann::json;

/// Rationals become "p/q" strings, doubles JSON numbers.
Json encode(const Rational& x);
Json encode(double x);
Json encode(const Number& x);

template <class T>
Json encode_vector(const std::vector<T>& v)
{
    Json out = Json::array();
    for (const auto& x : v) {
        out.push_back(encode(x));
    }
    return out;
}

template <Scalar T>
Json encode_matrix(const Matrix<T>& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(encode(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json labels_json(const StateSpace& states);
Json partition_json(const ClassPartition& part, const StateSpace& states);

template <Scalar T>
Json limit_report_json(const LimitReport<T>& r)
{
    Json j;
    j["mode"] = r.mode;
    j["classes"] = r.partition.closed_classes;
    j["transient"] = r.partition.transient;
    j["gamma"] = encode_matrix(r.gamma_chain.gamma);
    j["gamma_mode"] = std::string(to_string(r.gamma_chain.mode));
    j["pi_gamma"] = encode_vector(r.gamma_chain.pi_gamma.values());
    Json per_class = Json::array();
    for (const auto& d : r.per_class_stationary) {
        per_class.push_back(encode_vector(d.values()));
    }
    j["per_class_stationary"] = std::move(per_class);
    j["class_masses"] = encode_vector(r.class_masses);
    j["node_limit"] = encode_vector(r.node_limit.values());
    j["labels"] = labels_json(r.states);
    j["numeric_mode"] = scalar_traits<T>::exact ? "exact" : "floating";
    if (r.prediction) {
        j["prediction"] = r.mode;
    }
    return j;
}

template <Scalar T>
Json stochastic_matrix_json(const StochasticMatrix<T>& m)
{
    Json j;
    j["n"] = m.size();
    j["rows"] = encode_matrix(m.entries());
    j["labels"] = labels_json(m.states());
    return j;
}

template <Scalar T>
Json sweep_json(const SweepResult<T>& s, const StateSpace& states)
{
    Json j;
    j["eps_grid"] = encode_vector(s.eps_grid);
    Json table = Json::array();
    for (const auto& d : s.pi_table) {
        table.push_back(encode_vector(d.values()));
    }
    j["pi_table"] = std::move(table);
    j["predicted_limit"] = encode_vector(s.predicted_limit.values());
    j["predicted_mode"] = s.predicted_mode;
    j["errors"] = encode_vector(s.errors);
    j["fitted_slope"] = s.fitted_slope ? Json(*s.fitted_slope) : Json(nullptr);
    j["fitted_constant"] = s.fitted_constant;
    j["first_order"] = encode_vector(s.first_order);
    j["extrapolated_limit"] = encode_vector(s.extrapolated_limit);
    j["labels"] = labels_json(states);
    return j;
}

Json convergence_json(const ConvergenceReport& r);
Json polynomial_json(const EpsPolynomial& poly);
Json root_weights_json(const PolynomialLimit& limit, const StateSpace& states);
Json adjudication_json(const AdjudicationReport& r);
Json skeleton_json(const SkeletonReport& r);
Json leaf_formula_json(const LeafFormulaReport& r, const StateSpace& states);

/// Canonical text: sorted keys, two-space indent, trailing newline. Parsing
/// and re-dumping canonical text reproduces it byte for byte.
std::string canonical_dump(const Json& j);

enum class ReportKind { limit, sweep, root_weights, adjudication, skeleton, leaf_formula, partition, matrix };

/// Structural check of a report against its documented schema; returns a
/// list of problems (empty when valid).
std::vector<std::string> schema_violations(const Json& j, ReportKind kind);

} // namespace znr
