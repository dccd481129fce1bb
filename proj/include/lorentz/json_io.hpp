#pragma once

#include <string>

#include <json.hpp>

#include "lorentz/quotient.hpp"
#include "lorentz/space.hpp"

namespace lorentz {

using Json = nlohmann::ordered_json;

// SpaceFile schema:
// {"points":[{"id":str,"coords":[..]?}], "tau":[[i,j,v]], "causal":[[i,j]],
//  "chron":[[i,j]]?, "d":[[i,j,v]]?, "model":{"K":real}?}
// indices refer to the points array; v may be the string "inf"; omitted chron
// is derived as tau > 0; omitted d comes from coordinates when a model tag is
// present, and defaults to the discrete metric otherwise.
FiniteLorentzSpace parse_space(const Json& j);
Json serialize_space(const FiniteLorentzSpace& X);

// {"x1": <space>, "x2": <space>, "pairs": [[id,id],...], "declared": {...}}
GluingSpec parse_gluing_spec(const Json& j);
Json serialize_gluing_spec(const GluingSpec& spec);

Json violations_report(const FiniteLorentzSpace& X, const std::vector<Violation>& v);
Json quotient_report(const QuotientSpace& Q, int max_witnesses = 16);
Json map_properties_report(const MapPropertyReport& rep, const FiniteLorentzSpace& base);

Json load_json_file(const std::string& path);  // BadInput on parse failure

}  // namespace lorentz
