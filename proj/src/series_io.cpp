#include "hodge/series_io.hpp"

#include "hodge/errors.hpp"

namespace hodge {

nlohmann::json series_to_json(const SparseSeries& s) {
  std::size_t n = s.nvars();
  for (const auto& [m, c] : s.terms()) n = std::max(n, m.support_size());
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : s.terms()) terms.push_back({{"e", m.padded(n)}, {"c", to_fraction_string(c)}});
  nlohmann::json j;
  j["nvars"] = n;
  j["truncation"] = s.truncation() ? nlohmann::json(*s.truncation()) : nlohmann::json(nullptr);
  j["terms"] = std::move(terms);
  return j;
}

SparseSeries series_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("nvars").get<std::size_t>();
    std::optional<int> trunc;
    if (!j.at("truncation").is_null()) trunc = j.at("truncation").get<int>();
    if (trunc && *trunc < 0) throw InvalidInput("truncation must be non-negative");
    SparseSeries s = SparseSeries::zero(n, trunc);
    for (const auto& t : j.at("terms")) {
      auto e = t.at("e").get<std::vector<int>>();
      if (e.size() != n) throw VariableCountMismatch("term exponent vector length differs from nvars");
      Monomial m(std::move(e));
      if (trunc && m.degree() > *trunc) throw InvalidInput("term exceeds the declared truncation");
      s.add_term(m, Rational::parse(t.at("c").get<std::string>()));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed series document: ") + e.what());
  }
}

std::string serialize_series(const SparseSeries& s) { return series_to_json(s).dump(); }

SparseSeries parse_series(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("series is not valid JSON: ") + e.what());
  }
  return series_from_json(j);
}

}  // namespace hodge
