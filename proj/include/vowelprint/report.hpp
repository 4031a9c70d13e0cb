// Copyright 2026 The vowelprint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOWELPRINT_REPORT_HPP_
#define VOWELPRINT_REPORT_HPP_

#include <string>
#include <string_view>

#include <json.hpp>

#include "vowelprint/pipeline.hpp"

namespace vowelprint {

/// Bumped whenever the JSON layout changes; see docs/report.schema.json.
inline constexpr std::string_view kReportSchemaVersion = "1.0.0";

nlohmann::json config_to_json(const AnalysisConfig& cfg);
AnalysisConfig config_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const Analysis& analysis);
/// Inverse of report_to_json. Throws Error(kMalformedTable) on a schema
/// version mismatch or missing fields.
Analysis report_from_json(const nlohmann::json& j);

/// One row per frame with its segment index and segment label.
std::string report_csv(const Analysis& analysis);

inline constexpr std::string_view kTracksHeader =
    "time,f0,f0_intensity,low1_hz,low1_int,low2_hz,low2_int,up1_hz,up1_int,up2_hz,up2_int";

/// Plot data: one row per frame, empty cells for absent values.
std::string tracks_csv(const Analysis& analysis);

}  // namespace vowelprint

#endif  // VOWELPRINT_REPORT_HPP_
