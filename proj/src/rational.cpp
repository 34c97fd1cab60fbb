#include "znr/rational.hpp"

#include "znr/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

namespace znr {

std::string to_string(const Rational& value)
{
    return numerator(value).str() + "/" + denominator(value).str();
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

/// Base-10 digits to an integer; leading zeros must not select octal.
Integer decimal_integer(std::string_view digits)
{
    const auto first = digits.find_first_not_of('0');
    return first == std::string_view::npos ? Integer(0) : Integer{std::string(digits.substr(first))};
}

Integer parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        fail(ErrorKind::parse, "invalid number '" + std::string(whole) + "'");
    }
    Integer v = decimal_integer(s);
    return negative ? Integer(-v) : v;
}

Integer pow10(unsigned long e)
{
    return boost::multiprecision::pow(Integer(10), static_cast<unsigned>(e));
}

Rational parse_decimal(std::string_view text)
{
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = s.substr(e + 1);
        if (!exp_text.empty() && exp_text.front() == '+') {
            exp_text.remove_prefix(1);
        }
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size() || exp_text.empty()) {
            fail(ErrorKind::parse, "invalid exponent in '" + std::string(text) + "'");
        }
        s = s.substr(0, e);
    }
    std::string digits;
    long fraction_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
            fail(ErrorKind::parse, "invalid number '" + std::string(text) + "'");
        }
        digits = std::string(ip) + std::string(fp);
        fraction_digits = static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) {
            fail(ErrorKind::parse, "invalid number '" + std::string(text) + "'");
        }
        digits = std::string(s);
    }
    if (std::labs(exponent) > 100000) {
        fail(ErrorKind::parse, "exponent out of range in '" + std::string(text) + "'");
    }
    Integer mantissa = decimal_integer(digits);
    if (negative) {
        mantissa = -mantissa;
    }
    long shift = exponent - fraction_digits;
    if (shift >= 0) {
        return Rational(mantissa * pow10(static_cast<unsigned long>(shift)));
    }
    return Rational(mantissa, pow10(static_cast<unsigned long>(-shift)));
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        fail(ErrorKind::parse, "empty number");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer p = parse_integer(text.substr(0, slash), text);
        Integer q = parse_integer(text.substr(slash + 1), text);
        if (q == 0) {
            fail(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
        }
        return Rational(p, q);
    }
    return parse_decimal(text);
}

double to_double(const Rational& value)
{
    return value.convert_to<double>();
}

Rational rational_from_double(double value)
{
    if (!std::isfinite(value)) {
        fail(ErrorKind::parse, "non-finite number");
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) {
        fail(ErrorKind::parse, "cannot format number");
    }
    return parse_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

} // namespace znr
