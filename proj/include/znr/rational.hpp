#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

namespace znr {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Canonical text form: "p/q" in lowest terms with q > 0, always including the
/// denominator ("0/1", "3/1").
std::string to_string(const Rational& value);

/// Accepts "p/q", integers, and decimal literals with optional exponent
/// ("0.125", "-3", "1e-3", "2.5E+2"). Decimals convert exactly.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

/// Exact rational value of a finite double, going through the shortest
/// round-trip decimal representation (so 0.1 becomes 1/10).
Rational rational_from_double(double value);

/// Entries at or below this magnitude do not count as edges in floating mode.
inline constexpr double floating_edge_threshold = 1e-15;
/// Row sums and distribution totals must hit 1 within this in floating mode.
inline constexpr double floating_sum_tolerance = 1e-12;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static bool positive(const Rational& x) { return x > 0; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static bool sums_to_one(const Rational& s) { return s == 1; }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static Rational from_rational(const Rational& x) { return x; }
    static double to_double(const Rational& x) { return znr::to_double(x); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static bool positive(double x) { return x > floating_edge_threshold; }
    static bool is_zero(double x) { return std::abs(x) <= floating_edge_threshold; }
    static bool sums_to_one(double s) { return std::abs(s - 1.0) <= floating_sum_tolerance; }
    static double abs(double x) { return std::abs(x); }
    static double from_rational(const Rational& x) { return znr::to_double(x); }
    static double to_double(double x) { return x; }
};

template <class T>
concept Scalar = requires { scalar_traits<T>::exact; };

template <Scalar To>
To scalar_cast(const Rational& x)
{
    return scalar_traits<To>::from_rational(x);
}

template <Scalar To>
To scalar_cast(double x)
{
    if constexpr (std::same_as<To, double>) {
        return x;
    } else {
        return rational_from_double(x);
    }
}

} // namespace znr
