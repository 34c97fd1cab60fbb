#include "znr/cli.hpp"

#include "znr/adjudicate.hpp"
#include "znr/models.hpp"
#include "znr/report.hpp"
#include "znr/sweep.hpp"
#include "znr/zero_noise.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace znr::cli {

namespace {

enum class Format { json, tsv, pretty };
enum class RankMode { automatic, theorem3, theorem2, extended };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string graph_path;
    std::string matrix_path;
    std::string q_spec;
    std::string mode = "auto";
    std::string numeric = "auto";
    std::string eps;
    std::string format = "json";
    std::string dangling = "self_loop";
    std::string model_kind;
    std::string weights_path;
    std::optional<std::size_t> max_out_degree;
    bool skeletons = false;
    bool leaf_check = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::parse, "cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Format parse_format(const std::string& f)
{
    if (f == "json") {
        return Format::json;
    }
    if (f == "tsv") {
        return Format::tsv;
    }
    return Format::pretty;
}

struct Inputs {
    ExactMatrix p;
    std::optional<WeightedDigraph> graph;
};

Inputs load_chain(const RunConfig& cfg)
{
    if (cfg.graph_path.empty() == cfg.matrix_path.empty()) {
        throw UsageError("exactly one of --graph or --matrix is required");
    }
    const DanglingPolicy dangling = parse_dangling_policy(cfg.dangling);
    if (!cfg.graph_path.empty()) {
        WeightedDigraph g = parse_edge_list(read_file(cfg.graph_path));
        ExactMatrix p = to_stochastic<Rational>(g, dangling);
        return Inputs{std::move(p), std::move(g)};
    }
    return Inputs{parse_matrix_json(read_file(cfg.matrix_path)), std::nullopt};
}

bool use_exact(const RunConfig& cfg, std::size_t n)
{
    if (cfg.numeric == "exact") {
        return true;
    }
    if (cfg.numeric == "floating") {
        return false;
    }
    return n <= 12;
}

ExactMatrix load_q(const RunConfig& cfg, const ExactMatrix& p)
{
    const std::string& spec = cfg.q_spec;
    if (spec.empty()) {
        throw UsageError("--q is required for '" + cfg.command + "'");
    }
    if (spec == "uniform") {
        return uniform_kernel<Rational>(p.states());
    }
    auto eq = spec.find('=');
    if (eq == std::string::npos) {
        throw UsageError("unknown --q value '" + spec + "'");
    }
    const std::string kind = spec.substr(0, eq);
    const std::string path = spec.substr(eq + 1);
    if (kind == "personalized") {
        std::vector<Rational> nu = parse_node_values(read_file(path), p.states());
        return personalized_kernel<Rational>(p.states(), Distribution<Rational>::normalized(std::move(nu)).span());
    }
    if (kind == "block") {
        std::istringstream in(read_file(path));
        std::vector<std::string> tokens;
        for (std::string line; std::getline(in, line);) {
            if (auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            std::istringstream fields(line);
            for (std::string t; fields >> t;) {
                tokens.push_back(t);
            }
        }
        if (tokens.empty()) {
            fail(ErrorKind::parse, "block file is empty");
        }
        Rational m_value = parse_rational(tokens[0]);
        if (m_value < 1 || denominator(m_value) != 1) {
            fail(ErrorKind::parse, "block file must start with the class count m");
        }
        const auto m = numerator(m_value).convert_to<std::size_t>();
        if (tokens.size() != 1 + m * m) {
            fail(ErrorKind::parse, "block file needs " + std::to_string(m * m) + " gamma values");
        }
        Matrix<Rational> block(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                block(i, j) = parse_rational(tokens[1 + i * m + j]);
            }
        }
        return expand_block_kernel(p.states(), classify_states(p), block);
    }
    if (kind == "matrix") {
        ExactMatrix q = parse_matrix_json(read_file(path));
        if (q.size() != p.size()) {
            fail(ErrorKind::validation, "Q has " + std::to_string(q.size()) + " states but P has " +
                                            std::to_string(p.size()));
        }
        return ExactMatrix(p.states(), q.entries());
    }
    throw UsageError("unknown --q kind '" + kind + "'");
}

RankMode parse_mode(const std::string& mode)
{
    if (mode == "theorem3") {
        return RankMode::theorem3;
    }
    if (mode == "theorem2") {
        return RankMode::theorem2;
    }
    if (mode == "extended") {
        return RankMode::extended;
    }
    return RankMode::automatic;
}

template <Scalar T>
std::string format_value(const T& x)
{
    if constexpr (scalar_traits<T>::exact) {
        return to_string(x);
    } else {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, end);
    }
}

template <Scalar T>
void print_limit(const LimitReport<T>& r, Format format, std::ostream& out, std::ostream& err)
{
    if (r.prediction) {
        const std::string banner = "PREDICTION (" + r.mode +
                                   "): equal mass per closed class; not confirmed by the exact oracle";
        if (format == Format::pretty) {
            out << banner << '\n';
        } else {
            err << banner << '\n';
        }
    }
    if (format == Format::json) {
        out << canonical_dump(limit_report_json(r));
        return;
    }
    if (format == Format::tsv) {
        out << "node\tlabel\tclass\tlimit\n";
        for (std::size_t v = 0; v < r.states.size(); ++v) {
            auto k = r.partition.class_of(v);
            out << v << '\t' << r.states.label(v) << '\t' << (k ? std::to_string(*k) : std::string("T")) << '\t'
                << format_value(r.node_limit[v]) << '\n';
        }
        return;
    }
    out << "mode: " << r.mode << "\n";
    for (std::size_t k = 0; k < r.partition.m(); ++k) {
        out << "class " << k << " {";
        for (std::size_t a = 0; a < r.partition.closed_classes[k].size(); ++a) {
            out << (a ? ", " : "") << r.states.label(r.partition.closed_classes[k][a]);
        }
        out << "} mass " << format_value(r.class_masses[k]) << '\n';
    }
    if (!r.partition.transient.empty()) {
        out << "transient {";
        for (std::size_t a = 0; a < r.partition.transient.size(); ++a) {
            out << (a ? ", " : "") << r.states.label(r.partition.transient[a]);
        }
        out << "}\n";
    }
    for (std::size_t v = 0; v < r.states.size(); ++v) {
        out << std::left << std::setw(12) << r.states.label(v) << ' ' << format_value(r.node_limit[v]) << '\n';
    }
}

template <Scalar T>
LimitReport<T> rank_with(const StochasticMatrix<T>& p, const std::optional<StochasticMatrix<T>>& q, RankMode mode)
{
    if (mode == RankMode::theorem2) {
        return equal_mass_prediction(p);
    }
    if (mode == RankMode::theorem3) {
        return zero_noise_limit(p, *q);
    }
    if (mode == RankMode::extended) {
        return extended_zero_noise_limit(p, *q);
    }
    if (classify_states(p).transient.empty()) {
        return zero_noise_limit(p, *q);
    }
    return extended_zero_noise_limit(p, *q);
}

int cmd_classify(const RunConfig& cfg, std::ostream& out)
{
    Inputs in = load_chain(cfg);
    const ClassPartition part = classify_states(in.p);
    const auto& states = in.p.states();
    switch (parse_format(cfg.format)) {
    case Format::json:
        out << canonical_dump(partition_json(part, states));
        break;
    case Format::tsv:
        out << "node\tlabel\tclass\n";
        for (std::size_t v = 0; v < states.size(); ++v) {
            auto k = part.class_of(v);
            out << v << '\t' << states.label(v) << '\t' << (k ? std::to_string(*k) : std::string("T")) << '\n';
        }
        break;
    case Format::pretty:
        out << part.m() << " closed class(es), " << part.transient.size() << " transient state(s)\n";
        for (std::size_t k = 0; k < part.m(); ++k) {
            out << "class " << k << ":";
            for (auto v : part.closed_classes[k]) {
                out << ' ' << states.label(v);
            }
            out << '\n';
        }
        if (!part.transient.empty()) {
            out << "transient:";
            for (auto v : part.transient) {
                out << ' ' << states.label(v);
            }
            out << '\n';
        }
        break;
    }
    return exit_ok;
}

int cmd_rank(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    Inputs in = load_chain(cfg);
    const RankMode mode = parse_mode(cfg.mode);
    std::optional<ExactMatrix> q;
    if (mode != RankMode::theorem2 || !cfg.q_spec.empty()) {
        q = load_q(cfg, in.p);
    }
    const Format format = parse_format(cfg.format);
    if (use_exact(cfg, in.p.size())) {
        print_limit(rank_with(in.p, q, mode), format, out, err);
    } else {
        std::optional<FloatMatrix> qf;
        if (q) {
            qf = q->cast<double>();
        }
        print_limit(rank_with(in.p.cast<double>(), qf, mode), format, out, err);
    }
    return exit_ok;
}

template <Scalar T>
void print_sweep(const SweepResult<T>& s, const StateSpace& states, Format format, std::ostream& out)
{
    const ConvergenceReport conv = convergence_report(s);
    if (format == Format::json) {
        Json j = sweep_json(s, states);
        j["convergence"] = convergence_json(conv);
        out << canonical_dump(j);
        return;
    }
    if (format == Format::tsv) {
        out << "eps";
        for (std::size_t i = 0; i < states.size(); ++i) {
            out << "\tpi_" << states.label(i);
        }
        out << "\tlinf_error\n";
        for (std::size_t r = 0; r < s.eps_grid.size(); ++r) {
            out << format_value(s.eps_grid[r]);
            for (std::size_t i = 0; i < states.size(); ++i) {
                out << '\t' << format_value(s.pi_table[r][i]);
            }
            out << '\t' << format_value(s.errors[r]) << '\n';
        }
        return;
    }
    out << to_text(conv);
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out)
{
    Inputs in = load_chain(cfg);
    ExactMatrix q = load_q(cfg, in.p);
    const bool exact = cfg.numeric == "exact";
    std::vector<Rational> grid =
        cfg.eps.empty() ? default_eps_grid(exact ? NumericMode::exact : NumericMode::floating) : parse_eps_grid(cfg.eps);
    const Format format = parse_format(cfg.format);
    if (exact) {
        print_sweep(epsilon_sweep(in.p, q, grid), in.p.states(), format, out);
    } else {
        std::vector<double> g;
        for (const auto& e : grid) {
            g.push_back(to_double(e));
        }
        print_sweep(epsilon_sweep(in.p.cast<double>(), q.cast<double>(), g), in.p.states(), format, out);
    }
    return exit_ok;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.numeric == "floating") {
        throw UsageError("'oracle' is exact-only");
    }
    Inputs in = load_chain(cfg);
    ExactMatrix q = load_q(cfg, in.p);
    const Guards guards = default_guards();
    if (cfg.skeletons) {
        out << canonical_dump(skeleton_json(skeleton_identity_check(in.p, q, classify_states(in.p), guards)));
        return exit_ok;
    }
    PolynomialLimit limit = polynomial_limit(in.p, q, guards);
    const Format format = parse_format(cfg.format);
    if (format == Format::json) {
        out << canonical_dump(root_weights_json(limit, in.p.states()));
        return exit_ok;
    }
    if (format == Format::tsv) {
        out << "root\tlabel\tmin_degree\tlimit\tpolynomial\n";
    }
    for (std::size_t i = 0; i < limit.root_polynomials.size(); ++i) {
        const auto& h = limit.root_polynomials[i];
        const std::string deg = h.is_zero() ? "-" : std::to_string(min_degree(h));
        if (format == Format::tsv) {
            out << i << '\t' << in.p.states().label(i) << '\t' << deg << '\t' << to_string(limit.limit[i]) << '\t'
                << h.to_text() << '\n';
        } else {
            out << "|H(" << in.p.states().label(i) << ")| = " << h.to_text() << "   limit " << to_string(limit.limit[i])
                << '\n';
        }
    }
    if (format == Format::pretty) {
        out << "total = " << limit.total.to_text() << "   leading degree " << limit.leading_degree << '\n';
    }
    return exit_ok;
}

int cmd_adjudicate(const RunConfig& cfg, std::ostream& out)
{
    Inputs in = load_chain(cfg);
    ExactMatrix q = load_q(cfg, in.p);
    AdjudicationReport r = adjudicate(in.p, q);
    const Format format = parse_format(cfg.format);
    if (format == Format::json) {
        out << canonical_dump(adjudication_json(r));
        return exit_ok;
    }
    auto number_text = [](const Number& x) {
        return std::visit([](const auto& v) { return format_value(v); }, x);
    };
    if (format == Format::tsv) {
        out << "method\tnode\tlabel\tlimit\toracle\tdeviation\n";
        for (const auto& m : r.methods) {
            if (m.error) {
                continue;
            }
            for (std::size_t v = 0; v < m.node_limit.size(); ++v) {
                out << m.method << '\t' << v << '\t' << r.states.label(v) << '\t' << to_string(m.node_limit[v])
                    << '\t' << number_text(r.oracle[v]) << '\t' << number_text(m.deviation[v]) << '\n';
            }
        }
        return exit_ok;
    }
    out << "oracle: " << r.oracle_kind << '\n';
    out << std::left << std::setw(12) << "node";
    out << std::setw(16) << "oracle";
    for (const auto& m : r.methods) {
        out << std::setw(16) << m.method;
    }
    out << '\n';
    for (std::size_t v = 0; v < r.states.size(); ++v) {
        out << std::setw(12) << r.states.label(v) << std::setw(16) << number_text(r.oracle[v]);
        for (const auto& m : r.methods) {
            out << std::setw(16) << (m.error ? std::string("n/a") : to_string(m.node_limit[v]));
        }
        out << '\n';
    }
    for (const auto& m : r.methods) {
        out << m.method << ": " << m.verdict << '\n';
    }
    return exit_ok;
}

int cmd_model(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.graph_path.empty()) {
        throw UsageError("'model' requires --graph");
    }
    const DanglingPolicy dangling = parse_dangling_policy(cfg.dangling);
    WeightedDigraph g = parse_edge_list(read_file(cfg.graph_path));
    std::optional<ExactMatrix> p;
    if (cfg.model_kind == "srw") {
        p = simple_random_walk(g, dangling);
    } else if (cfg.model_kind == "bt") {
        if (cfg.weights_path.empty()) {
            throw UsageError("'model bt' requires --weights");
        }
        NodeWeights w(parse_node_values(read_file(cfg.weights_path), g.states()));
        if (cfg.leaf_check) {
            out << canonical_dump(leaf_formula_json(bt_leaf_formula_check(g, w), g.states()));
            return exit_ok;
        }
        p = bradley_terry_chain(g, w, dangling);
    } else if (cfg.model_kind == "pairwise") {
        if (cfg.weights_path.empty()) {
            throw UsageError("'model pairwise' requires --weights");
        }
        EdgeComparisons c(g.states(), parse_edge_values(read_file(cfg.weights_path), g.states()), cfg.max_out_degree);
        p = pairwise_comparison_chain(c);
    } else {
        throw UsageError("model kind must be srw, bt or pairwise");
    }
    const Format format = parse_format(cfg.format);
    if (format == Format::json) {
        out << canonical_dump(stochastic_matrix_json(*p));
        return exit_ok;
    }
    for (std::size_t i = 0; i < p->size(); ++i) {
        if (format == Format::pretty) {
            out << std::left << std::setw(12) << p->states().label(i);
        }
        for (std::size_t j = 0; j < p->size(); ++j) {
            out << (j || format == Format::pretty ? "\t" : "") << to_string((*p)(i, j));
        }
        out << '\n';
    }
    return exit_ok;
}

void add_input_options(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--graph", cfg.graph_path, "Edge-list file");
    sub->add_option("--matrix", cfg.matrix_path, "Transition matrix JSON file");
    sub->add_option("--dangling", cfg.dangling, "Dangling-node policy")
        ->check(CLI::IsMember({"self_loop", "uniform_row"}));
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "tsv", "pretty"}));
    sub->add_option("--numeric", cfg.numeric, "Numeric mode (auto: exact up to 12 states)")
        ->check(CLI::IsMember({"auto", "exact", "floating"}));
}

void add_q_option(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--q", cfg.q_spec, "uniform | personalized=<file> | block=<file> | matrix=<file>");
}

int exit_code_for(const Error& e)
{
    if (e.kind() == ErrorKind::eps_out_of_range) {
        return exit_usage;
    }
    return e.is_precondition_failure() ? exit_precondition : exit_data;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Zero-noise limits of perturbed Markov chains", "znr"};
    app.require_subcommand(1);

    auto* classify = app.add_subcommand("classify", "Closed classes and transient states");
    add_input_options(classify, cfg);

    auto* rank = app.add_subcommand("rank", "Zero-noise limit distribution");
    add_input_options(rank, cfg);
    add_q_option(rank, cfg);
    rank->add_option("--mode", cfg.mode, "theorem3 | theorem2 | extended (auto picks theorem3 or extended)")
        ->check(CLI::IsMember({"auto", "theorem3", "theorem2", "extended"}));

    auto* sweep = app.add_subcommand("sweep", "Solve pi^eps over an eps grid");
    add_input_options(sweep, cfg);
    add_q_option(sweep, cfg);
    sweep->add_option("--eps", cfg.eps, "Grid: a..b, a..b:k, or comma list");

    auto* oracle = app.add_subcommand("oracle", "Exact root-weight polynomials");
    add_input_options(oracle, cfg);
    add_q_option(oracle, cfg);
    oracle->add_flag("--skeletons", cfg.skeletons, "Labelled-skeleton identity report (block Q)");

    auto* adj = app.add_subcommand("adjudicate", "Compare limit formulas against the oracle");
    add_input_options(adj, cfg);
    add_q_option(adj, cfg);

    auto* model = app.add_subcommand("model", "Build an example chain from a graph");
    model->add_option("kind", cfg.model_kind, "srw | bt | pairwise")->required();
    model->add_option("--graph", cfg.graph_path, "Edge-list file");
    model->add_option("--weights", cfg.weights_path, "Node or edge weight file");
    model->add_option("--D", cfg.max_out_degree, "Override D for pairwise comparisons");
    model->add_option("--dangling", cfg.dangling, "Dangling-node policy")
        ->check(CLI::IsMember({"self_loop", "uniform_row"}));
    model->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "tsv", "pretty"}));
    model->add_flag("--leaf-check", cfg.leaf_check, "Report the leaf-product formula check (bt only)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (classify->parsed()) {
            cfg.command = "classify";
            return cmd_classify(cfg, out);
        }
        if (rank->parsed()) {
            cfg.command = "rank";
            return cmd_rank(cfg, out, err);
        }
        if (sweep->parsed()) {
            cfg.command = "sweep";
            return cmd_sweep(cfg, out);
        }
        if (oracle->parsed()) {
            cfg.command = "oracle";
            return cmd_oracle(cfg, out);
        }
        if (adj->parsed()) {
            cfg.command = "adjudicate";
            return cmd_adjudicate(cfg, out);
        }
        cfg.command = "model";
        return cmd_model(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

} // namespace znr::cli
