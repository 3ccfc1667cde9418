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

#include "scoring_bias/bias.h"

#include <cmath>

#include "scoring_bias/error.h"
#include "scoring_bias/normal.h"

namespace scoring_bias {

void ValidateModel(const GaussianScoreModel& m) {
  if (!std::isfinite(m.mu0) || !std::isfinite(m.mua) ||
      !std::isfinite(m.sigma0) || !std::isfinite(m.sigmaa)) {
    Fail(ErrorCode::kDomainError, "Gaussian score model has non-finite fields");
  }
  if (!(m.sigma0 > 0.0) || !(m.sigmaa > 0.0)) {
    Fail(ErrorCode::kDomainError, "Gaussian score model needs sigma > 0");
  }
}

std::string_view BiasKindName(BiasKind kind) {
  switch (kind) {
    case BiasKind::kEmpirical:
      return "empirical";
    case BiasKind::kPlugin:
      return "plugin";
    case BiasKind::kGaussian:
      return "gaussian";
  }
  return "unknown";
}

GaussianDistribution::GaussianDistribution(double mean, double stddev)
    : mean_(mean), stddev_(stddev) {
  if (!(stddev > 0.0)) {
    Fail(ErrorCode::kDomainError, "Gaussian distribution needs stddev > 0");
  }
}

double GaussianDistribution::Cdf(double t) const {
  return StdNormalCdf((t - mean_) / stddev_);
}

double GaussianDistribution::Quantile(double q) const {
  return mean_ + stddev_ * StdNormalQuantile(q);
}

double EmpiricalDistribution::Quantile(double q) const {
  return ThresholdForLevel(cdf_, TargetLevel{q, LevelMode::kFixFpr});
}

BiasEstimate EmpiricalRelativeBias(std::span<const LabeledScore> scores_s,
                                   std::span<const LabeledScore> scores_sprime,
                                   const TargetLevel& level,
                                   const DetectorOptions& options) {
  const DetectorEvaluation s = EvaluateDetector(scores_s, level, options);
  const DetectorEvaluation sp = EvaluateDetector(scores_sprime, level, options);
  BiasEstimate out;
  out.kind = BiasKind::kEmpirical;
  out.tpr_s = s.tpr;
  out.tpr_sprime = sp.tpr;
  out.xi = sp.tpr - s.tpr;
  out.level = level;
  return out;
}

BiasEstimate EmpiricalRelativeBias(const EmpiricalCdf& normal_s,
                                   const EmpiricalCdf& abnormal_s,
                                   const EmpiricalCdf& normal_sprime,
                                   const EmpiricalCdf& abnormal_sprime,
                                   const TargetLevel& level,
                                   const DetectorOptions& options) {
  const DetectorEvaluation s =
      EvaluateDetector(normal_s, abnormal_s, level, options);
  const DetectorEvaluation sp =
      EvaluateDetector(normal_sprime, abnormal_sprime, level, options);
  BiasEstimate out;
  out.kind = BiasKind::kEmpirical;
  out.tpr_s = s.tpr;
  out.tpr_sprime = sp.tpr;
  out.xi = sp.tpr - s.tpr;
  out.level = level;
  return out;
}

BiasEstimate PluginRelativeBias(const ScoreDistribution& f0,
                                const ScoreDistribution& fa,
                                const ScoreDistribution& f0_prime,
                                const ScoreDistribution& fa_prime, double q) {
  const TargetLevel level{q, LevelMode::kFixFpr};
  ValidateLevel(level);
  const double miss_s = fa.Cdf(f0.Quantile(q));
  const double miss_sprime = fa_prime.Cdf(f0_prime.Quantile(q));
  BiasEstimate out;
  out.kind = BiasKind::kPlugin;
  out.tpr_s = 1.0 - miss_s;
  out.tpr_sprime = 1.0 - miss_sprime;
  out.xi = miss_s - miss_sprime;
  out.level = level;
  return out;
}

namespace {

double MissArgument(const GaussianScoreModel& m, double z) {
  return m.sigma0 * z / m.sigmaa + (m.mu0 - m.mua) / m.sigmaa;
}

}  // namespace

double GaussianTpr(const GaussianScoreModel& m, double q) {
  ValidateModel(m);
  ValidateLevel(TargetLevel{q, LevelMode::kFixFpr});
  // 1 - Phi(a) == Phi(-a), without cancellation in the upper tail.
  return StdNormalCdf(-MissArgument(m, StdNormalQuantile(q)));
}

BiasEstimate GaussianRelativeBias(const GaussianScoreModel& m,
                                  const GaussianScoreModel& m_prime, double q) {
  BiasEstimate out;
  out.kind = BiasKind::kGaussian;
  out.tpr_s = GaussianTpr(m, q);
  out.tpr_sprime = GaussianTpr(m_prime, q);
  out.xi = out.tpr_sprime - out.tpr_s;
  out.level = TargetLevel{q, LevelMode::kFixFpr};
  return out;
}

std::string_view DirectionName(Direction d) {
  switch (d) {
    case Direction::kUpward:
      return "upward";
    case Direction::kDownward:
      return "downward";
    case Direction::kFlat:
      return "flat";
  }
  return "unknown";
}

BiasDirection ClassifyBiasDirection(double tpr_baseline, double tpr_treatment,
                                    std::string class_tag) {
  if (!(tpr_baseline >= 0.0 && tpr_baseline <= 1.0) ||
      !(tpr_treatment >= 0.0 && tpr_treatment <= 1.0)) {
    Fail(ErrorCode::kDomainError, "TPR values must lie in [0, 1]");
  }
  BiasDirection out;
  out.tpr_baseline = tpr_baseline;
  out.tpr_treatment = tpr_treatment;
  out.class_tag = std::move(class_tag);
  if (tpr_treatment > tpr_baseline) {
    out.direction = Direction::kUpward;
  } else if (tpr_treatment < tpr_baseline) {
    out.direction = Direction::kDownward;
  } else {
    out.direction = Direction::kFlat;
  }
  return out;
}

}  // namespace scoring_bias
