#include "znr/report.hpp"
#include "znr/stochastic.hpp"

namespace znr {

namespace {

Rational json_entry(const Json& v)
{
    if (v.is_string()) {
        return parse_rational(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return Rational(v.get<long long>());
    }
    if (v.is_number_unsigned()) {
        return Rational(v.get<unsigned long long>());
    }
    if (v.is_number_float()) {
        return rational_from_double(v.get<double>());
    }
    fail(ErrorKind::parse, "matrix entries must be numbers or \"p/q\" strings");
}

} // namespace

ExactMatrix parse_matrix_json(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::parse, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array()) {
        fail(ErrorKind::parse, "matrix file must be an object with a \"rows\" array");
    }
    const auto& rows = j.at("rows");
    const std::size_t n = rows.size();
    if (j.contains("n")) {
        if (!j.at("n").is_number_integer() || j.at("n").get<long long>() != static_cast<long long>(n)) {
            fail(ErrorKind::parse, "\"n\" does not match the number of rows");
        }
    }
    if (n == 0) {
        fail(ErrorKind::parse, "matrix has no rows");
    }
    Matrix<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) {
            fail(ErrorKind::parse, "row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
        }
        for (std::size_t k = 0; k < n; ++k) {
            m(i, k) = json_entry(rows[i][k]);
        }
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        for (const auto& l : j.at("labels")) {
            if (!l.is_string()) {
                fail(ErrorKind::parse, "labels must be strings");
            }
            labels.push_back(l.get<std::string>());
        }
    }
    bool default_labels = true;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        default_labels = default_labels && labels[i] == std::to_string(i);
    }
    if (default_labels) {
        labels.clear();
    }
    return ExactMatrix(StateSpace(n, std::move(labels)), std::move(m));
}

std::string serialize_matrix_json(const ExactMatrix& m)
{
    return canonical_dump(stochastic_matrix_json(m));
}

} // namespace znr
