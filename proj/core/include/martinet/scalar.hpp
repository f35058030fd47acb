#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

namespace martinet {

/// Exact coefficient field used for classification and invariant extraction.
using Rational = boost::multiprecision::cpp_rational;

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr std::string_view name = "double";
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr std::string_view name = "rational";
};

/// The two coefficient kernels: exact rational and double precision.
template <typename T>
concept Scalar = requires { scalar_traits<T>::exact; };

inline double to_double(double v) noexcept { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

/// Zero test: exact in rational mode, |v| <= tol in floating mode.
template <Scalar T>
bool is_negligible(const T& v, double tol)
{
    if constexpr (scalar_traits<T>::exact) {
        return v == 0;
    } else {
        return std::abs(v) <= tol;
    }
}

template <Scalar T>
double magnitude(const T& v)
{
    return std::abs(to_double(v));
}

/// Parses "p/q", integers, decimals and scientific notation. Decimal input is
/// converted exactly in rational mode ("0.02" -> 1/50).
template <Scalar T>
T parse_scalar(std::string_view text);

template <>
double parse_scalar<double>(std::string_view text);
template <>
Rational parse_scalar<Rational>(std::string_view text);

/// Shortest round-trip decimal for doubles, "p/q" (or "p") for rationals.
std::string format_scalar(double v);
std::string format_scalar(const Rational& v);

}  // namespace martinet
