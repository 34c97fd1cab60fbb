#include "znr/adjudicate.hpp"

namespace znr {

double to_double(const Number& x)
{
    return std::visit(
        [](const auto& v) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>) {
                return to_double(v);
            } else {
                return v;
            }
        },
        x);
}

namespace {

MethodResult compare(std::string method, const LimitReport<Rational>& report, const AdjudicationReport& adj)
{
    MethodResult r;
    r.method = std::move(method);
    r.prediction = report.prediction;
    r.node_limit = report.node_limit.values();
    r.class_masses = report.class_masses;
    const bool exact = adj.oracle_kind == "exact_polynomial";
    Rational max_exact = 0;
    double max_float = 0.0;
    for (std::size_t i = 0; i < r.node_limit.size(); ++i) {
        if (exact) {
            const Rational& o = std::get<Rational>(adj.oracle[i]);
            Rational d = r.node_limit[i] > o ? Rational(r.node_limit[i] - o) : Rational(o - r.node_limit[i]);
            max_exact = std::max(max_exact, d);
            r.deviation.emplace_back(std::move(d));
        } else {
            const double d = std::abs(to_double(r.node_limit[i]) - std::get<double>(adj.oracle[i]));
            max_float = std::max(max_float, d);
            r.deviation.emplace_back(d);
        }
    }
    if (exact) {
        r.agrees = max_exact == 0;
        r.verdict = r.agrees ? "agrees with exact oracle"
                             : "discrepant: max deviation " + to_string(max_exact) + " from exact oracle";
        r.max_deviation = std::move(max_exact);
    } else {
        r.agrees = max_float <= adj.tolerance;
        r.verdict = (r.agrees ? "agrees with sweep oracle within " : "discrepant: exceeds sweep tolerance ") +
                    std::to_string(adj.tolerance);
        r.max_deviation = max_float;
    }
    return r;
}

template <class F>
MethodResult run_method(std::string method, const AdjudicationReport& adj, F&& compute)
{
    try {
        return compare(method, compute(), adj);
    } catch (const Error& e) {
        MethodResult r;
        r.method = std::move(method);
        r.error = e.what();
        r.verdict = std::string("not applicable: ") + e.what();
        return r;
    }
}

} // namespace

AdjudicationReport adjudicate(const ExactMatrix& p, const ExactMatrix& q, const Guards& guards)
{
    AdjudicationReport adj{p.states(), classify_states(p), "", {}, 0.0, {}};
    try {
        PolynomialLimit exact = polynomial_limit(p, q, guards);
        adj.oracle_kind = "exact_polynomial";
        for (auto& v : exact.limit) {
            adj.oracle.emplace_back(std::move(v));
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::guard_exceeded) {
            throw;
        }
        std::vector<double> grid;
        for (const auto& e : default_eps_grid(NumericMode::floating)) {
            grid.push_back(to_double(e));
        }
        auto sweep = epsilon_sweep(p.cast<double>(), q.cast<double>(), grid);
        adj.oracle_kind = "sweep_extrapolation";
        adj.tolerance = 10.0 * sweep.eps_grid.back();
        for (double v : sweep.extrapolated_limit) {
            adj.oracle.emplace_back(v);
        }
    }
    adj.methods.push_back(run_method("theorem2", adj, [&] { return equal_mass_prediction(p); }));
    adj.methods.push_back(run_method("theorem3", adj, [&] { return zero_noise_limit(p, q); }));
    adj.methods.push_back(run_method("extended", adj, [&] { return extended_zero_noise_limit(p, q); }));
    return adj;
}

} // namespace znr
