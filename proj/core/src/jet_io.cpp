#include "martinet/jet_io.hpp"

#include <stdexcept>

namespace martinet {

// -0.0 prints as 0.0
nlohmann::json scalar_to_json(double v) { return v == 0.0 ? 0.0 : v; }

nlohmann::json scalar_to_json(const Rational& v) { return format_scalar(v); }

nlohmann::json to_json(const Jet<double>& f)
{
    auto arr = nlohmann::json::array();
    for (double c : f.coeffs()) {
        arr.push_back(scalar_to_json(c));
    }
    return arr;
}

nlohmann::json to_json(const Jet<Rational>& f)
{
    auto arr = nlohmann::json::array();
    for (const auto& c : f.coeffs()) {
        arr.push_back(format_scalar(c));
    }
    return arr;
}

namespace {

template <Scalar T>
T scalar_from_json(const nlohmann::json& v)
{
    if (v.is_string()) {
        return parse_scalar<T>(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return T(v.get<long long>());
    }
    if (v.is_number()) {
        if constexpr (scalar_traits<T>::exact) {
            // Route through the shortest decimal so 0.1 becomes 1/10 rather than its binary expansion.
            return parse_scalar<T>(format_scalar(v.get<double>()));
        } else {
            return v.get<double>();
        }
    }
    throw std::invalid_argument("jet coefficient must be a number or a numeric string");
}

}  // namespace

template <Scalar T>
Jet<T> jet_from_json(const nlohmann::json& j, std::optional<std::size_t> order)
{
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("jet must be a non-empty JSON array");
    }
    std::vector<T> coeffs;
    coeffs.reserve(j.size());
    for (const auto& v : j) {
        coeffs.push_back(scalar_from_json<T>(v));
    }
    std::size_t n = order.value_or(coeffs.size() - 1);
    return Jet<T>(std::move(coeffs), n);
}

template <Scalar T>
std::vector<T> parse_list(std::string_view text)
{
    if (text.find_first_not_of(" \t") == std::string_view::npos) {
        throw std::invalid_argument("empty coefficient list");
    }
    std::vector<T> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_scalar<T>(piece));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

template <Scalar T>
Jet<T> parse_jet(std::string_view text, std::optional<std::size_t> order)
{
    auto coeffs = parse_list<T>(text);
    std::size_t n = order.value_or(coeffs.size() - 1);
    return Jet<T>(std::move(coeffs), n);
}

template Jet<double> jet_from_json<double>(const nlohmann::json&, std::optional<std::size_t>);
template Jet<Rational> jet_from_json<Rational>(const nlohmann::json&, std::optional<std::size_t>);
template Jet<double> parse_jet<double>(std::string_view, std::optional<std::size_t>);
template Jet<Rational> parse_jet<Rational>(std::string_view, std::optional<std::size_t>);
template std::vector<double> parse_list<double>(std::string_view);
template std::vector<Rational> parse_list<Rational>(std::string_view);

}  // namespace martinet
