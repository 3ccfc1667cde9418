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

#include "scoring_bias/scenario.h"

#include <algorithm>
#include <map>

#include "scoring_bias/error.h"

namespace scoring_bias {
namespace {

struct ClassScores {
  std::vector<double> scores;
  // Running mean; exact when every row repeats the same value.
  double similarity_mean = 0.0;
  std::size_t similarity_count = 0;
};

struct GroupedFile {
  std::vector<double> normal;
  // Class tags in order of first appearance.
  std::vector<std::string> order;
  std::map<std::string, ClassScores> classes;
};

GroupedFile Group(const ScoreFile& file, const char* which) {
  GroupedFile g;
  for (const ScoreRecord& r : file.rows) {
    ValidateLabeledScore(r.score);
    if (r.score.label == Label::kNormal) {
      g.normal.push_back(r.score.score);
      continue;
    }
    const std::string tag =
        r.score.class_tag.empty() ? kUntaggedClass : r.score.class_tag;
    auto [it, inserted] = g.classes.try_emplace(tag);
    if (inserted) g.order.push_back(tag);
    it->second.scores.push_back(r.score.score);
    if (r.similarity) {
      ClassScores& c = it->second;
      ++c.similarity_count;
      c.similarity_mean += (*r.similarity - c.similarity_mean) /
                           static_cast<double>(c.similarity_count);
    }
  }
  if (g.normal.empty()) {
    Fail(ErrorCode::kMissingClass,
         std::string(which) + " file has no normal scores");
  }
  if (g.classes.empty()) {
    Fail(ErrorCode::kMissingClass,
         std::string(which) + " file has no abnormal scores");
  }
  return g;
}

std::size_t CountAbove(const std::vector<double>& v, double tau) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [tau](double s) { return s > tau; }));
}

}  // namespace

ScenarioReport RunScenarioReport(const ScoreFile& baseline,
                                 const ScoreFile& treatment,
                                 const TargetLevel& level) {
  ValidateLevel(level);
  if (level.mode != LevelMode::kFixFpr) {
    Fail(ErrorCode::kDomainError, "scenario reports use the fixed-FPR mode");
  }
  const GroupedFile base = Group(baseline, "baseline");
  const GroupedFile treat = Group(treatment, "treatment");

  for (const auto& [tag, unused] : base.classes) {
    if (!treat.classes.contains(tag)) {
      Fail(ErrorCode::kClassMismatch,
           "class '" + tag + "' is missing from the treatment file");
    }
  }
  for (const auto& [tag, unused] : treat.classes) {
    if (!base.classes.contains(tag)) {
      Fail(ErrorCode::kClassMismatch,
           "class '" + tag + "' is missing from the baseline file");
    }
  }

  ScenarioReport report;
  report.level = level;
  report.threshold_baseline =
      ThresholdForLevel(EmpiricalCdf::Build(base.normal), level);
  report.threshold_treatment =
      ThresholdForLevel(EmpiricalCdf::Build(treat.normal), level);

  for (const std::string& tag : base.order) {
    const ClassScores& b = base.classes.at(tag);
    const ClassScores& t = treat.classes.at(tag);
    ScenarioRow row;
    row.n_abnormal_baseline = b.scores.size();
    row.n_abnormal_treatment = t.scores.size();
    const double tpr_b =
        static_cast<double>(CountAbove(b.scores, report.threshold_baseline)) /
        static_cast<double>(b.scores.size());
    const double tpr_t =
        static_cast<double>(CountAbove(t.scores, report.threshold_treatment)) /
        static_cast<double>(t.scores.size());
    row.bias = ClassifyBiasDirection(tpr_b, tpr_t, tag);
    if (b.similarity_count > 0) {
      row.similarity = b.similarity_mean;
    } else if (t.similarity_count > 0) {
      row.similarity = t.similarity_mean;
    }
    report.rows.push_back(std::move(row));
  }

  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ScenarioRow& a, const ScenarioRow& b) {
                     if (a.similarity && b.similarity) {
                       return *a.similarity > *b.similarity;
                     }
                     return a.similarity.has_value() && !b.similarity;
                   });
  return report;
}

}  // namespace scoring_bias
