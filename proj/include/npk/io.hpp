#pragma once

#include <string>

#include "json.hpp"
#include "npk/carleson.hpp"

namespace npk::io {

inline constexpr int schema_version = 1;
inline constexpr const char* tool_version = "0.1.0";

using json = nlohmann::ordered_json;

// decimal string with enough digits to round-trip at the value's precision
std::string decimal(const MpF& x);

json to_json(const NodeSequence& seq);
NodeSequence nodes_from_json(const json& j, const PrecisionContext& ctx);

json to_json(const MomentSequence& m);
MomentSequence moments_from_json(const json& j);

json to_json(const DiscreteMeasure& mu);

// polar measure files: { "atoms": [{"r": "1/2", "t": "0", "m": "1"}, ...] },
// all entries rational strings, angles in units of pi
json to_json(const PolarMeasure& mu);
PolarMeasure polar_from_json(const json& j, long bits);

json to_json(const BoxConstantReport& rep);
json to_json(const Trajectory& t);
std::string to_csv(const Trajectory& t);

json to_json(const HermitianKernelMatrix& m, long bits);
std::string to_csv(const MatE& m);  // row-major lo/hi pairs

json manifest(const std::vector<std::string>& argv);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace npk::io
