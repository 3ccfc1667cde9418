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

// Relative scoring bias between a baseline scorer s and a second scorer s':
//
//   xi(s, s') = TPR(s', tau') - TPR(s, tau)
//
// where each threshold is set independently at the same target level. Three
// estimators are provided: the empirical one on labeled scores, the
// infinite-sample plug-in F_a(F_0^{-1}(q)) - F'_a(F'_0^{-1}(q)) on any pair of
// CDF/quantile objects, and its closed form when all four score
// distributions are Gaussian.
//
// The "bias against the best detector in a model class" is not computable
// without that class; it is the special case of xi where s' is that detector.

#ifndef SCORING_BIAS_BIAS_H_
#define SCORING_BIAS_BIAS_H_

#include <span>
#include <string>
#include <string_view>

#include "scoring_bias/detector.h"
#include "scoring_bias/ecdf.h"

namespace scoring_bias {

// Normal-class and abnormal-class score distributions of one scorer. The
// second parameter of each pair is a standard deviation.
struct GaussianScoreModel {
  double mu0 = 0.0;
  double sigma0 = 1.0;
  double mua = 0.0;
  double sigmaa = 1.0;
};

// Throws DomainError unless both sigmas are positive and all fields finite.
void ValidateModel(const GaussianScoreModel& m);

enum class BiasKind { kEmpirical, kPlugin, kGaussian };

std::string_view BiasKindName(BiasKind kind);

struct BiasEstimate {
  double xi = 0.0;
  BiasKind kind = BiasKind::kEmpirical;
  double tpr_s = 0.0;
  double tpr_sprime = 0.0;
  TargetLevel level;
};

// A score distribution that can be evaluated and inverted.
class ScoreDistribution {
 public:
  virtual ~ScoreDistribution() = default;
  virtual double Cdf(double t) const = 0;
  virtual double Quantile(double q) const = 0;
};

class GaussianDistribution final : public ScoreDistribution {
 public:
  GaussianDistribution(double mean, double stddev);
  double Cdf(double t) const override;
  double Quantile(double q) const override;

 private:
  double mean_;
  double stddev_;
};

// Quantile follows the detector's threshold convention: the
// ceil(q * n)-th order statistic.
class EmpiricalDistribution final : public ScoreDistribution {
 public:
  explicit EmpiricalDistribution(EmpiricalCdf cdf) : cdf_(std::move(cdf)) {}
  double Cdf(double t) const override { return cdf_.Eval(t); }
  double Quantile(double q) const override;
  const EmpiricalCdf& cdf() const { return cdf_; }

 private:
  EmpiricalCdf cdf_;
};

// Empirical xi_hat. Thresholds are computed per scorer by EvaluateDetector,
// and TPRs are normalized by each scorer's abnormal count.
BiasEstimate EmpiricalRelativeBias(std::span<const LabeledScore> scores_s,
                                   std::span<const LabeledScore> scores_sprime,
                                   const TargetLevel& level,
                                   const DetectorOptions& options = {});

BiasEstimate EmpiricalRelativeBias(const EmpiricalCdf& normal_s,
                                   const EmpiricalCdf& abnormal_s,
                                   const EmpiricalCdf& normal_sprime,
                                   const EmpiricalCdf& abnormal_sprime,
                                   const TargetLevel& level,
                                   const DetectorOptions& options = {});

BiasEstimate PluginRelativeBias(const ScoreDistribution& f0,
                                const ScoreDistribution& fa,
                                const ScoreDistribution& f0_prime,
                                const ScoreDistribution& fa_prime, double q);

BiasEstimate GaussianRelativeBias(const GaussianScoreModel& m,
                                  const GaussianScoreModel& m_prime, double q);

// 1 - Phi((sigma0 Phi^{-1}(q) + mu0 - mua) / sigmaa).
double GaussianTpr(const GaussianScoreModel& m, double q);

enum class Direction { kUpward, kDownward, kFlat };

std::string_view DirectionName(Direction d);

struct BiasDirection {
  Direction direction = Direction::kFlat;
  double tpr_baseline = 0.0;
  double tpr_treatment = 0.0;
  std::string class_tag;
};

BiasDirection ClassifyBiasDirection(double tpr_baseline, double tpr_treatment,
                                    std::string class_tag);

}  // namespace scoring_bias

#endif  // SCORING_BIAS_BIAS_H_
