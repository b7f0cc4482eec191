#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hodge/sparse_poly.hpp"

namespace hodge {

/// Canonical JSON form of a series:
/// {"nvars": n, "truncation": D or null, "terms": [{"e": [...], "c": "num/den"}, ...]}
/// with terms in ascending graded-lex order and exponent vectors padded to nvars.
nlohmann::json series_to_json(const SparseSeries& s);

/// Inverse of series_to_json. Throws InvalidInput on malformed documents.
SparseSeries series_from_json(const nlohmann::json& j);

std::string serialize_series(const SparseSeries& s);
SparseSeries parse_series(std::string_view text);

}  // namespace hodge
