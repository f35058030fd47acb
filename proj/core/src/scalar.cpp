#include "martinet/scalar.hpp"

#include <fmt/format.h>

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace martinet {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

boost::multiprecision::cpp_int parse_integer(std::string_view s)
{
    s = trim(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) {
        throw std::invalid_argument("empty integer");
    }
    boost::multiprecision::cpp_int value = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("invalid integer digit in '" + std::string(s) + "'");
        }
        value = value * 10 + (c - '0');
    }
    return negative ? boost::multiprecision::cpp_int(-value) : value;
}

Rational parse_decimal(std::string_view s)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string exp_text(s.substr(e + 1));
        char* end = nullptr;
        exponent = std::strtol(exp_text.c_str(), &end, 10);
        if (exp_text.empty() || *end != '\0') {
            throw std::invalid_argument("invalid exponent in '" + std::string(s) + "'");
        }
        s = s.substr(0, e);
    }
    boost::multiprecision::cpp_int digits = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (char c : s) {
        if (c == '.' && !seen_point) {
            seen_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("invalid number '" + std::string(s) + "'");
        }
        seen_digit = true;
        digits = digits * 10 + (c - '0');
        if (seen_point) {
            --exponent;
        }
    }
    if (!seen_digit) {
        throw std::invalid_argument("invalid number '" + std::string(s) + "'");
    }
    boost::multiprecision::cpp_int scale = 1;
    for (long i = 0; i < std::labs(exponent); ++i) {
        scale *= 10;
    }
    Rational value = exponent >= 0 ? Rational(digits * scale) : Rational(digits, scale);
    return negative ? Rational(-value) : value;
}

}  // namespace

template <>
Rational parse_scalar<Rational>(std::string_view text)
{
    text = trim(text);
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_integer(text.substr(0, slash));
        auto den = parse_integer(text.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
        return Rational(num, den);
    }
    return parse_decimal(text);
}

template <>
double parse_scalar<double>(std::string_view text)
{
    text = trim(text);
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    if (text.find('/') != std::string_view::npos) {
        return to_double(parse_scalar<Rational>(text));
    }
    std::string buffer(text);
    char* end = nullptr;
    double value = std::strtod(buffer.c_str(), &end);
    if (end != buffer.c_str() + buffer.size()) {
        throw std::invalid_argument("invalid number '" + buffer + "'");
    }
    return value;
}

std::string format_scalar(double v)
{
    return fmt::format("{}", v);
}

std::string format_scalar(const Rational& v)
{
    auto num = boost::multiprecision::numerator(v);
    auto den = boost::multiprecision::denominator(v);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

}  // namespace martinet
