#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "phaselip/frame.hpp"
#include "phaselip/priors.hpp"
#include "phaselip/stability.hpp"

namespace phaselip {

nlohmann::json to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Frame& f);
Frame frame_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PriorSet& B);
PriorSet prior_from_json(const nlohmann::json& j);

/// Report document with a schema_version field; byte-identical for identical
/// inputs.  Non-finite ratios serialize as the string "inf".
nlohmann::json to_json(const StabilityReport& r);

/// CSV rows "m,dq,dm,ratio" with 17 significant digits.
std::string scan_to_csv(const std::vector<ScanRecord>& records);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace phaselip
