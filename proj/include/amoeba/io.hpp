#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "amoeba/core_model.hpp"
#include "amoeba/laurent.hpp"

namespace amoeba {

/// {"k": int, "m": int, "a": [[{"re":..,"im":..},..],..], "b": [{"re":..,"im":..},..]}
AffineSpaceSpec spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json spec_to_json(const AffineSpaceSpec& spec);
AffineSpaceSpec load_spec(const std::string& path);

/// [{"terms": [{"alpha": [..], "re": .., "im": ..}, ..]}, ..]
std::vector<LaurentPolynomial> ideal_from_json(const nlohmann::json& j);
std::vector<LaurentPolynomial> load_ideal(const std::string& path);

/// Parses "1.5,-2,3e-1". Throws UsageError naming `flag` on bad input.
std::vector<double> parse_number_list(const std::string& text, const std::string& flag);

}  // namespace amoeba
