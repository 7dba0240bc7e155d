#pragma once

#include <json.hpp>

#include "weylham/ratfunc.hpp"

namespace weylham {

// [{"exponents": [..], "coeff": "num/den"}, ...] in canonical term order
nlohmann::json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const nlohmann::json& j, const AlphabetPtr& alphabet);

// {"num": [...], "den": [...]}
nlohmann::json ratfunc_to_json(const RationalFunction& f);
RationalFunction ratfunc_from_json(const nlohmann::json& j, const AlphabetPtr& alphabet);

}  // namespace weylham
