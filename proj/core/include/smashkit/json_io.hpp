#pragma once

// Canonical JSON for the syntax types and reports, and the textual shape
// grammar used on the command line:  A | I | (X ^ Y) | [X, Y, Z]

#include <string>

#include <nlohmann/json.hpp>

#include "smashkit/induction.hpp"

namespace smashkit {

nlohmann::json to_json(const Shape& s);
nlohmann::json to_json(const Term& t);
nlohmann::json to_json(const PathExpr& p);
nlohmann::json to_json(const MapDef& m);
nlohmann::json to_json(const NormalWord& w);
nlohmann::json to_json(const Square& s);
nlohmann::json to_json(const Obligation& o);
nlohmann::json to_json(const ObligationReport& r);
nlohmann::json to_json(const DischargeReport& r);

// Throws IllFormed with the offending position.
Shape parse_shape(const std::string& text);

}  // namespace smashkit
