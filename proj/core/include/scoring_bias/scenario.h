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

#ifndef SCORING_BIAS_SCENARIO_H_
#define SCORING_BIAS_SCENARIO_H_

#include <optional>
#include <string>
#include <vector>

#include "scoring_bias/bias.h"
#include "scoring_bias/detector.h"
#include "scoring_bias/score_file.h"

namespace scoring_bias {

// Class name used for abnormal rows that carry no class_tag.
inline constexpr char kUntaggedClass[] = "abnormal";

struct ScenarioRow {
  BiasDirection bias;
  std::optional<double> similarity;
  std::size_t n_abnormal_baseline = 0;
  std::size_t n_abnormal_treatment = 0;
};

struct ScenarioReport {
  double threshold_baseline = 0.0;
  double threshold_treatment = 0.0;
  TargetLevel level;
  std::vector<ScenarioRow> rows;
};

// Per-class TPR of a baseline and a treatment scorer, each thresholded on its
// own normal scores. Rows are ordered by decreasing similarity when any class
// carries one (classes without a similarity go last), otherwise by first
// appearance in the baseline file. Throws ClassMismatch when the abnormal
// class tags differ between files, MissingClass when a file has no normal or
// no abnormal rows.
ScenarioReport RunScenarioReport(const ScoreFile& baseline,
                                 const ScoreFile& treatment,
                                 const TargetLevel& level);

}  // namespace scoring_bias

#endif  // SCORING_BIAS_SCENARIO_H_
