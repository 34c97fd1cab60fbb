#include "znr/report.hpp"

#include <functional>
#include <regex>

namespace znr {

Json encode(const Rational& x)
{
    return to_string(x);
}

Json encode(double x)
{
    return x;
}

Json encode(const Number& x)
{
    return std::visit([](const auto& v) { return encode(v); }, x);
}

Json labels_json(const StateSpace& states)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
        out.push_back(states.label(i));
    }
    return out;
}

Json partition_json(const ClassPartition& part, const StateSpace& states)
{
    Json j;
    j["classes"] = part.closed_classes;
    j["transient"] = part.transient;
    j["m"] = part.m();
    j["irreducible"] = part.m() == 1 && part.transient.empty();
    j["labels"] = labels_json(states);
    return j;
}

Json convergence_json(const ConvergenceReport& r)
{
    Json j;
    j["eps"] = r.eps;
    j["errors"] = r.errors;
    j["slope"] = r.slope ? Json(*r.slope) : Json(nullptr);
    j["constant"] = r.constant;
    j["pass"] = r.pass;
    j["verdict"] = r.verdict;
    j["predicted_mode"] = r.predicted_mode;
    return j;
}

Json polynomial_json(const EpsPolynomial& poly)
{
    return encode_vector(poly.coefficients());
}

Json root_weights_json(const PolynomialLimit& limit, const StateSpace& states)
{
    Json roots = Json::array();
    for (std::size_t i = 0; i < limit.root_polynomials.size(); ++i) {
        const auto& h = limit.root_polynomials[i];
        Json r;
        r["root"] = i;
        r["label"] = states.label(i);
        r["polynomial"] = polynomial_json(h);
        r["min_degree"] = h.is_zero() ? Json(nullptr) : Json(min_degree(h));
        roots.push_back(std::move(r));
    }
    Json j;
    j["roots"] = std::move(roots);
    j["total"] = polynomial_json(limit.total);
    j["leading_degree"] = limit.leading_degree;
    j["limit"] = encode_vector(limit.limit);
    j["first_order"] = encode_vector(limit.first_order);
    j["labels"] = labels_json(states);
    return j;
}

Json adjudication_json(const AdjudicationReport& r)
{
    Json methods = Json::array();
    for (const auto& m : r.methods) {
        Json row;
        row["method"] = m.method;
        row["prediction"] = m.prediction;
        row["verdict"] = m.verdict;
        row["agrees"] = m.agrees;
        if (m.error) {
            row["error"] = *m.error;
        } else {
            row["node_limit"] = encode_vector(m.node_limit);
            row["class_masses"] = encode_vector(m.class_masses);
            row["deviation"] = encode_vector(m.deviation);
            row["max_deviation"] = encode(m.max_deviation);
        }
        methods.push_back(std::move(row));
    }
    Json j;
    j["oracle_kind"] = r.oracle_kind;
    j["oracle"] = encode_vector(r.oracle);
    j["tolerance"] = r.tolerance;
    j["methods"] = std::move(methods);
    j["classes"] = r.partition.closed_classes;
    j["transient"] = r.partition.transient;
    j["labels"] = labels_json(r.states);
    return j;
}

Json skeleton_json(const SkeletonReport& r)
{
    Json skeletons = Json::array();
    for (const auto& s : r.skeletons) {
        Json e;
        e["root"] = s.root;
        Json edges = Json::array();
        for (const auto& [u, v] : s.edges) {
            edges.push_back(Json::array({u, v}));
        }
        e["edges"] = std::move(edges);
        e["gamma_weight"] = encode(s.gamma_weight);
        e["labelled_sum"] = encode(s.labelled_sum);
        e["equal"] = s.equal;
        skeletons.push_back(std::move(e));
    }
    Json j;
    j["class_sizes"] = r.class_sizes;
    j["gamma"] = encode_matrix(r.gamma);
    j["skeletons"] = std::move(skeletons);
    j["equal_count"] = r.equal_count;
    j["discrepant_count"] = r.discrepant_count;
    return j;
}

Json leaf_formula_json(const LeafFormulaReport& r, const StateSpace& states)
{
    Json ratio = Json::array();
    for (const auto& x : r.ratio) {
        ratio.push_back(x ? encode(*x) : Json(nullptr));
    }
    Json j;
    j["stationary"] = encode_vector(r.stationary);
    j["leaf_sums"] = encode_vector(r.leaf_sums);
    j["leaf_normalized"] = encode_vector(r.leaf_normalized);
    j["ratio"] = std::move(ratio);
    j["proportional"] = r.proportional;
    j["labels"] = labels_json(states);
    return j;
}

std::string canonical_dump(const Json& j)
{
    return j.dump(2) + "\n";
}

namespace {

using Check = std::function<bool(const Json&)>;

bool is_number_value(const Json& v)
{
    static const std::regex rational(R"(-?[0-9]+/[0-9]+)");
    return v.is_number() || (v.is_string() && std::regex_match(v.get<std::string>(), rational));
}

bool is_index(const Json& v)
{
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
}

Check array_of(Check item)
{
    return [item](const Json& v) {
        if (!v.is_array()) {
            return false;
        }
        for (const auto& x : v) {
            if (!item(x)) {
                return false;
            }
        }
        return true;
    };
}

Check nullable(Check item)
{
    return [item](const Json& v) { return v.is_null() || item(v); };
}

Check object_with(std::vector<std::pair<std::string, Check>> fields)
{
    return [fields](const Json& v) {
        if (!v.is_object()) {
            return false;
        }
        for (const auto& [key, check] : fields) {
            if (!v.contains(key) || !check(v.at(key))) {
                return false;
            }
        }
        return true;
    };
}

const Check number = is_number_value;
const Check index = is_index;
const Check string = [](const Json& v) { return v.is_string(); };
const Check boolean = [](const Json& v) { return v.is_boolean(); };
const Check numbers = array_of(number);
const Check indices = array_of(index);
const Check number_matrix = array_of(numbers);
const Check strings = array_of(string);

std::vector<std::pair<std::string, Check>> fields_for(ReportKind kind)
{
    switch (kind) {
    case ReportKind::limit:
        return {{"mode", string},         {"classes", array_of(indices)},
                {"transient", indices},   {"gamma", number_matrix},
                {"pi_gamma", numbers},    {"per_class_stationary", number_matrix},
                {"class_masses", numbers}, {"node_limit", numbers},
                {"labels", strings}};
    case ReportKind::sweep:
        return {{"eps_grid", numbers},        {"pi_table", number_matrix}, {"predicted_limit", numbers},
                {"predicted_mode", string},   {"errors", numbers},         {"fitted_slope", nullable(number)},
                {"first_order", numbers},     {"labels", strings}};
    case ReportKind::root_weights:
        return {{"roots", array_of(object_with({{"root", index},
                                                {"label", string},
                                                {"polynomial", numbers},
                                                {"min_degree", nullable(index)}}))},
                {"total", numbers},
                {"leading_degree", index},
                {"limit", numbers},
                {"first_order", numbers},
                {"labels", strings}};
    case ReportKind::adjudication:
        return {{"oracle_kind", string},
                {"oracle", numbers},
                {"tolerance", number},
                {"methods", array_of(object_with({{"method", string}, {"verdict", string}, {"agrees", boolean}}))},
                {"classes", array_of(indices)},
                {"transient", indices},
                {"labels", strings}};
    case ReportKind::skeleton:
        return {{"class_sizes", indices},
                {"gamma", number_matrix},
                {"skeletons", array_of(object_with({{"root", index},
                                                    {"edges", array_of(indices)},
                                                    {"gamma_weight", number},
                                                    {"labelled_sum", number},
                                                    {"equal", boolean}}))},
                {"equal_count", index},
                {"discrepant_count", index}};
    case ReportKind::leaf_formula:
        return {{"stationary", numbers},
                {"leaf_sums", numbers},
                {"leaf_normalized", numbers},
                {"ratio", array_of(nullable(number))},
                {"proportional", boolean},
                {"labels", strings}};
    case ReportKind::partition:
        return {{"classes", array_of(indices)},
                {"transient", indices},
                {"m", index},
                {"irreducible", boolean},
                {"labels", strings}};
    case ReportKind::matrix:
        return {{"n", index}, {"rows", number_matrix}};
    }
    return {};
}

} // namespace

std::vector<std::string> schema_violations(const Json& j, ReportKind kind)
{
    std::vector<std::string> problems;
    if (!j.is_object()) {
        problems.push_back("report is not a JSON object");
        return problems;
    }
    for (const auto& [key, check] : fields_for(kind)) {
        if (!j.contains(key)) {
            problems.push_back("missing key '" + key + "'");
        } else if (!check(j.at(key))) {
            problems.push_back("key '" + key + "' has the wrong shape");
        }
    }
    return problems;
}

} // namespace znr
