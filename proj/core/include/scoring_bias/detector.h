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

// Threshold selection for a scored validation set.
//
// A point is flagged anomalous when its score is strictly greater than the
// threshold, so TPR = 1 - F_a(tau) and FPR = 1 - F_0(tau). In the default
// fixed-FPR mode the threshold is the k-th order statistic of the normal
// scores with k = ceil(q * n0), the smallest observed score whose calibration
// FPR does not exceed 1 - q. The fixed-TPR dual swaps the roles of the two
// classes.

#ifndef SCORING_BIAS_DETECTOR_H_
#define SCORING_BIAS_DETECTOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scoring_bias/ecdf.h"

namespace scoring_bias {

inline constexpr double kDefaultQ = 0.95;

enum class LevelMode { kFixFpr, kFixTpr };

// In kFixFpr mode q is the normal-score quantile (target FPR = 1 - q). In
// kFixTpr mode q is the target TPR.
struct TargetLevel {
  double q = kDefaultQ;
  LevelMode mode = LevelMode::kFixFpr;
};

// Throws DomainError unless 0 < q < 1.
void ValidateLevel(const TargetLevel& level);

enum class ThresholdRule {
  // k = ceil(q * n0): guarantees calibration FPR <= 1 - q.
  kConstraintSatisfying,
  // k = floor(q * n0): the literal largest order statistic with F0 <= q.
  kLiteralMax,
};

struct ThresholdChoice {
  double threshold = 0.0;
  // 1-indexed order statistic that was selected.
  std::size_t rank = 0;
  // True when the requested rank fell outside [1, n] and was clamped.
  bool clamped = false;
};

// `cdf` is the normal-score ECDF in kFixFpr mode and the abnormal-score ECDF
// in kFixTpr mode.
ThresholdChoice ChooseThreshold(
    const EmpiricalCdf& cdf, const TargetLevel& level,
    ThresholdRule rule = ThresholdRule::kConstraintSatisfying);

double ThresholdForLevel(
    const EmpiricalCdf& cdf, const TargetLevel& level,
    ThresholdRule rule = ThresholdRule::kConstraintSatisfying);

// Fraction of scores strictly above `tau`.
double FractionAbove(const EmpiricalCdf& cdf, double tau);

// r_hat = 1 - F_a(tau).
inline double RecallAtThreshold(const EmpiricalCdf& abnormal_cdf, double tau) {
  return FractionAbove(abnormal_cdf, tau);
}

struct DetectorEvaluation {
  double threshold = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
  std::size_t n_normal = 0;
  std::size_t n_abnormal = 0;
  TargetLevel level;
  std::size_t rank = 0;
  std::vector<std::string> warnings;
};

struct DetectorOptions {
  ThresholdRule rule = ThresholdRule::kConstraintSatisfying;
};

// Splits by label, builds both ECDFs and thresholds per the level. Throws
// MissingClass when either class is absent.
DetectorEvaluation EvaluateDetector(std::span<const LabeledScore> scores,
                                    const TargetLevel& level,
                                    const DetectorOptions& options = {});

DetectorEvaluation EvaluateDetector(const EmpiricalCdf& normal_cdf,
                                    const EmpiricalCdf& abnormal_cdf,
                                    const TargetLevel& level,
                                    const DetectorOptions& options = {});

struct SplitScores {
  std::vector<double> normal;
  std::vector<double> abnormal;
};

SplitScores SplitByLabel(std::span<const LabeledScore> scores);

}  // namespace scoring_bias

#endif  // SCORING_BIAS_DETECTOR_H_
