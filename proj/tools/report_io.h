/*
 * Copyright 2026 The Scoring Bias Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// JSON and CSV forms of the library's result types. Doubles are written as
// the shortest decimal that parses back to the same value, so every JSON
// document here reads back into an identical struct.

#ifndef SCORING_BIAS_TOOLS_REPORT_IO_H_
#define SCORING_BIAS_TOOLS_REPORT_IO_H_

#include <ostream>
#include <string>

#include "json.hpp"
#include "scoring_bias/bias.h"
#include "scoring_bias/detector.h"
#include "scoring_bias/harness.h"
#include "scoring_bias/scenario.h"

namespace scoring_bias {

void to_json(nlohmann::json& j, const TargetLevel& v);
void from_json(const nlohmann::json& j, TargetLevel& v);

void to_json(nlohmann::json& j, const DetectorEvaluation& v);
void from_json(const nlohmann::json& j, DetectorEvaluation& v);

void to_json(nlohmann::json& j, const BiasEstimate& v);
void from_json(const nlohmann::json& j, BiasEstimate& v);

void to_json(nlohmann::json& j, const SummaryStats& v);
void from_json(const nlohmann::json& j, SummaryStats& v);

// Per-run values are not serialized.
void to_json(nlohmann::json& j, const CellResult& v);
void from_json(const nlohmann::json& j, CellResult& v);

void to_json(nlohmann::json& j, const QuantileSummary& v);
void from_json(const nlohmann::json& j, QuantileSummary& v);

void to_json(nlohmann::json& j, const CoverageReport& v);
void from_json(const nlohmann::json& j, CoverageReport& v);

void to_json(nlohmann::json& j, const ScenarioReport& v);
void from_json(const nlohmann::json& j, ScenarioReport& v);

namespace cli {

// n,alpha,metric,min,q25,median,q75,max,mean,std with one row per cell and
// metric (xi, fpr).
void WriteQuantileCsv(std::ostream& out, const QuantileSummary& summary);

// A single-row CSV with the CoverageReport fields as columns.
void WriteCoverageCsv(std::ostream& out, const CoverageReport& report);

// class_tag,similarity,tpr_baseline,tpr_treatment,direction,...
void WriteScenarioCsv(std::ostream& out, const ScenarioReport& report);

// Aligned, human-readable table with 6 significant digits.
void WriteScenarioTable(std::ostream& out, const ScenarioReport& report);

// Writes `text` to `path`, throwing ConfigError when the file cannot be
// written.
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace cli
}  // namespace scoring_bias

#endif  // SCORING_BIAS_TOOLS_REPORT_IO_H_
