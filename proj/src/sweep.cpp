#include "znr/sweep.hpp"

#include <iomanip>
#include <sstream>

namespace znr {

FirstOrderComparison compare_first_order(const ExactMatrix& p, const ExactMatrix& q, double eps1, double eps2,
                                         const Guards& guards)
{
    FirstOrderComparison out;
    out.estimate = first_order_estimate<double>(p.cast<double>(), q.cast<double>(), eps1, eps2);
    out.exact = polynomial_limit(p, q, guards).first_order;
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < out.exact.size(); ++i) {
        const double x = to_double(out.exact[i]);
        diff = std::max(diff, std::abs(out.estimate[i] - x));
        scale = std::max(scale, std::abs(x));
    }
    out.relative_error = scale > 0.0 ? diff / scale : diff;
    return out;
}

std::string to_text(const ConvergenceReport& r)
{
    std::ostringstream os;
    os << "predicted limit: " << r.predicted_mode << '\n';
    os << "eps\tlinf_error\terror/eps\n";
    for (std::size_t i = 0; i < r.eps.size(); ++i) {
        os << std::setprecision(6) << r.eps[i] << '\t' << std::setprecision(6) << r.errors[i] << '\t'
           << std::setprecision(6) << r.errors[i] / r.eps[i] << '\n';
    }
    os << "fitted slope: ";
    if (r.slope) {
        os << std::setprecision(6) << *r.slope;
    } else {
        os << "undefined";
    }
    os << "\nfitted C: " << std::setprecision(6) << r.constant << '\n';
    os << "verdict: " << r.verdict << '\n';
    return os.str();
}

std::vector<Rational> parse_eps_grid(std::string_view text)
{
    std::vector<Rational> grid;
    if (auto dots = text.find(".."); dots != std::string_view::npos) {
        std::string_view from_text = text.substr(0, dots);
        std::string_view rest = text.substr(dots + 2);
        std::size_t count = 0;
        if (auto colon = rest.find(':'); colon != std::string_view::npos) {
            Rational k = parse_rational(rest.substr(colon + 1));
            if (k < 2 || denominator(k) != 1) {
                fail(ErrorKind::parse, "grid point count must be an integer >= 2");
            }
            count = numerator(k).convert_to<std::size_t>();
            rest = rest.substr(0, colon);
        }
        Rational a = parse_rational(from_text);
        Rational b = parse_rational(rest);
        detail::validate_eps(a);
        detail::validate_eps(b);
        if (a < b) {
            std::swap(a, b);
        }
        if (count == 0) {
            // Every power of ten from a down to b.
            Rational step(1, 10);
            for (Rational e = a; e >= b; e *= step) {
                grid.push_back(e);
            }
            if (grid.back() != b) {
                grid.push_back(b);
            }
        } else {
            const double la = std::log10(to_double(a));
            const double lb = std::log10(to_double(b));
            grid.push_back(a);
            for (std::size_t i = 1; i + 1 < count; ++i) {
                const double t = static_cast<double>(i) / static_cast<double>(count - 1);
                grid.push_back(rational_from_double(std::pow(10.0, la + t * (lb - la))));
            }
            grid.push_back(b);
        }
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t comma = text.find(',', start);
            std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
            Rational e = parse_rational(item);
            detail::validate_eps(e);
            grid.push_back(e);
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
    }
    std::sort(grid.begin(), grid.end(), [](const Rational& x, const Rational& y) { return x > y; });
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<Rational> default_eps_grid(NumericMode mode)
{
    if (mode == NumericMode::exact) {
        return {Rational(1, 10), Rational(1, 100), Rational(1, 1000)};
    }
    std::vector<Rational> grid;
    Rational e(1, 10);
    for (int k = 0; k < 6; ++k) {
        grid.push_back(e);
        e /= 10;
    }
    return grid;
}

} // namespace znr
