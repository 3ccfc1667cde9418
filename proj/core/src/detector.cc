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

#include "scoring_bias/detector.h"

#include <algorithm>
#include <cmath>

#include "scoring_bias/error.h"

namespace scoring_bias {
namespace {

// q * n is computed in floating point; 0.07 * 100 gives 7.000000000000001.
// Snap products within a relative 1e-9 of an integer onto that integer so the
// rank matches exact rational arithmetic.
double SnapToInteger(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return r;
  return x;
}

}  // namespace

void ValidateLevel(const TargetLevel& level) {
  if (!(level.q > 0.0 && level.q < 1.0)) {
    Fail(ErrorCode::kDomainError, "target level q must lie in (0, 1)");
  }
}

ThresholdChoice ChooseThreshold(const EmpiricalCdf& cdf,
                                const TargetLevel& level, ThresholdRule rule) {
  ValidateLevel(level);
  const std::size_t n = cdf.size();
  const double nd = static_cast<double>(n);
  // The fixed-TPR dual counts from the bottom of the abnormal scores: at most
  // (1 - q) * n1 abnormal scores may sit at or below the threshold.
  const bool fpr_mode = level.mode == LevelMode::kFixFpr;
  const double x = SnapToInteger((fpr_mode ? level.q : 1.0 - level.q) * nd);
  const bool conservative = rule == ThresholdRule::kConstraintSatisfying;
  double k = fpr_mode == conservative ? std::ceil(x) : std::floor(x);

  ThresholdChoice choice;
  if (k < 1.0) {
    k = 1.0;
    choice.clamped = true;
  } else if (k > nd) {
    k = nd;
    choice.clamped = true;
  }
  choice.rank = static_cast<std::size_t>(k);
  choice.threshold = cdf.OrderStatistic(choice.rank);
  return choice;
}

double ThresholdForLevel(const EmpiricalCdf& cdf, const TargetLevel& level,
                         ThresholdRule rule) {
  return ChooseThreshold(cdf, level, rule).threshold;
}

double FractionAbove(const EmpiricalCdf& cdf, double tau) {
  return static_cast<double>(cdf.CountAbove(tau)) /
         static_cast<double>(cdf.size());
}

SplitScores SplitByLabel(std::span<const LabeledScore> scores) {
  SplitScores out;
  for (const LabeledScore& s : scores) {
    ValidateLabeledScore(s);
    (s.label == Label::kNormal ? out.normal : out.abnormal).push_back(s.score);
  }
  return out;
}

DetectorEvaluation EvaluateDetector(std::span<const LabeledScore> scores,
                                    const TargetLevel& level,
                                    const DetectorOptions& options) {
  ValidateLevel(level);
  SplitScores split = SplitByLabel(scores);
  if (split.normal.empty()) {
    Fail(ErrorCode::kMissingClass, "no normal scores (label 0)");
  }
  if (split.abnormal.empty()) {
    Fail(ErrorCode::kMissingClass, "no abnormal scores (label 1)");
  }
  return EvaluateDetector(EmpiricalCdf::Build(std::move(split.normal)),
                          EmpiricalCdf::Build(std::move(split.abnormal)),
                          level, options);
}

DetectorEvaluation EvaluateDetector(const EmpiricalCdf& normal_cdf,
                                    const EmpiricalCdf& abnormal_cdf,
                                    const TargetLevel& level,
                                    const DetectorOptions& options) {
  const bool fpr_mode = level.mode == LevelMode::kFixFpr;
  const EmpiricalCdf& calibration = fpr_mode ? normal_cdf : abnormal_cdf;
  const ThresholdChoice choice =
      ChooseThreshold(calibration, level, options.rule);

  DetectorEvaluation eval;
  eval.threshold = choice.threshold;
  eval.rank = choice.rank;
  eval.level = level;
  eval.n_normal = normal_cdf.size();
  eval.n_abnormal = abnormal_cdf.size();
  eval.tpr = FractionAbove(abnormal_cdf, choice.threshold);
  eval.fpr = FractionAbove(normal_cdf, choice.threshold);

  const double rank_target = (fpr_mode ? level.q : 1.0 - level.q) *
                             static_cast<double>(calibration.size());
  if (choice.clamped || rank_target < 1.0) {
    eval.warnings.push_back(
        "calibration sample of " + std::to_string(calibration.size()) +
        " scores is too small to certify the target level; using rank " +
        std::to_string(choice.rank));
  }
  return eval;
}

}  // namespace scoring_bias
