#pragma once

// JSON form of a GradedFilteredComplex:
//
//   {"basis": [{"label": "x2", "degree": 2, "filtration": 0, "action": "100/1"}, ...],
//    "differential": [[from, to, "num/den"], ...]}
//
// Rationals are always written as canonical "num/den" strings and the
// differential is listed in (from, to) order, so writing a parsed document
// reproduces it byte for byte.

#include "qfloer/complexes.hpp"

#include "json.hpp"

#include <string>

namespace qfloer::complexes {

nlohmann::json to_json(const GradedFilteredComplex& complex);
GradedFilteredComplex complex_from_json(const nlohmann::json& document);

std::string serialize(const GradedFilteredComplex& complex);
GradedFilteredComplex deserialize(const std::string& text);

nlohmann::json chain_to_json(const GradedFilteredComplex& complex, const Chain& chain);

}  // namespace qfloer::complexes
