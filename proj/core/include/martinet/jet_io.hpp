#pragma once

#include "martinet/jet.hpp"

#include <nlohmann/json.hpp>

#include <string_view>

namespace martinet {

/// Jets serialize as a JSON array `[c0, c1, ...]`: floats as numbers, rationals as "p/q" strings.
nlohmann::json to_json(const Jet<double>& f);
nlohmann::json to_json(const Jet<Rational>& f);

nlohmann::json scalar_to_json(double v);
nlohmann::json scalar_to_json(const Rational& v);

/// Accepts numbers or numeric strings in either kernel. Order defaults to the array length - 1.
template <Scalar T>
Jet<T> jet_from_json(const nlohmann::json& j, std::optional<std::size_t> order = std::nullopt);

/// Parses the comma-separated form "c0,c1,...". Throws std::invalid_argument on empty input.
template <Scalar T>
Jet<T> parse_jet(std::string_view text, std::optional<std::size_t> order = std::nullopt);

template <Scalar T>
std::vector<T> parse_list(std::string_view text);

}  // namespace martinet
