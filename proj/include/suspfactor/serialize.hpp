#pragma once

#include "suspfactor/examples.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace suspfactor {

// JSON conventions: every exact value is an array of four "p/q" strings
// (coefficients over the basis 1, sqrt5, sqrt2, sqrt3); no floats appear
// anywhere, so equal inputs serialize to identical bytes.

nlohmann::json qlin_to_json(const QLin& v);
QLin qlin_from_json(const nlohmann::json& j);

nlohmann::json system_to_json(const SubshiftSystem& s);
nlohmann::json ceiling_to_json(const CeilingFunction& c);
nlohmann::json patch_to_json(const TilePatch& p);
TilePatch patch_from_json(const nlohmann::json& j);
nlohmann::json witness_to_json(const Witness& w);
nlohmann::json scan_to_json(const CoincidenceScan& s);
nlohmann::json params_to_json(const ExampleParams& p);
nlohmann::json fixtures_to_json(const ExampleFixtures& f);
nlohmann::json bundle_to_json(const ExampleBundle& b);  // full descriptor

// Tilings drawn to scale at 40 units per length unit, one row per patch,
// origin marked across rows.
std::string patches_to_svg(const std::vector<std::pair<std::string, TilePatch>>& rows);
std::string patch_to_text(const TilePatch& p);

}  // namespace suspfactor
