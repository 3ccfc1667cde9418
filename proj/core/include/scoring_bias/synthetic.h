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

// Synthetic anomaly data and stand-in scorers.
//
// Normal points have every coordinate i.i.d. N(0, 1). An abnormal point picks
// 3 coordinates with probability p_three_dims and 4 otherwise, uniformly
// without replacement and independently per point; those coordinates are
// N(anomaly_mean, anomaly_std) and the rest N(0, 1).
//
// Randomness layout: point i of a stream owns the counters
// [i * stride, (i + 1) * stride) with stride = 8 + dim rounded up to even.
// Counter 0 of the block labels the point (mixture sampling only), 1 picks
// the 3/4 branch, 2..5 drive the subset shuffle, and 8.. hold one standard
// normal per coordinate.

#ifndef SCORING_BIAS_SYNTHETIC_H_
#define SCORING_BIAS_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scoring_bias/bias.h"
#include "scoring_bias/ecdf.h"
#include "scoring_bias/random.h"

namespace scoring_bias {

enum class SpreadReading {
  // N(1.6, 0.8) read as mean 1.6 and standard deviation 0.8.
  kStdDev,
  // The same pair read as mean and variance.
  kVariance,
};

struct SyntheticConfig {
  std::size_t dim = 9;
  double anomaly_mean = 1.6;
  double anomaly_std = 0.8;
  SpreadReading spread_reading = SpreadReading::kStdDev;
  double p_three_dims = 0.4;
  double alpha = 0.1;
  std::uint64_t seed = 0;
};

void ValidateConfig(const SyntheticConfig& cfg);

struct DataPoint {
  std::vector<double> features;
  Label label = Label::kNormal;
};

// Fills `out` (size cfg.dim) with point `index` of `rng`, drawn from the
// class given by `label`. Returns the number of displaced coordinates (0 for
// normal points).
int GeneratePoint(const SyntheticConfig& cfg, const CounterRng& rng,
                  std::uint64_t index, Label label, std::span<double> out);

// n points from the mixture: each point is abnormal independently with
// probability cfg.alpha. Determined by (cfg.seed, n).
std::vector<DataPoint> SampleDataset(const SyntheticConfig& cfg,
                                     std::size_t n);

// Exactly n_normal normal points followed by n_abnormal abnormal points, from
// two disjoint streams keyed by `stream_key`.
std::vector<DataPoint> SampleByClass(const SyntheticConfig& cfg,
                                     std::uint64_t stream_key,
                                     std::size_t n_normal,
                                     std::size_t n_abnormal);

enum class ScorerKind { kCenterDistance, kSupervisedContrast, kGaussianDirect };

// Analytic stand-ins for trained detectors.
//
//   center distance:     s(x) = |x - c|
//   supervised contrast: s(x) = |x - c| - lambda_c |x - c_a|
//   gaussian direct:     scores are drawn from a GaussianScoreModel instead
//                        of computed from features
class StandInScorer {
 public:
  static StandInScorer FitCenter(std::span<const DataPoint> train_normal);
  static StandInScorer FitContrast(std::span<const DataPoint> train_normal,
                                   std::span<const DataPoint> train_abnormal,
                                   double lambda_c);
  static StandInScorer GaussianDirect(const GaussianScoreModel& model);

  ScorerKind kind() const { return kind_; }
  const std::vector<double>& center() const { return center_; }
  const std::vector<double>& abnormal_center() const {
    return abnormal_center_;
  }
  double lambda_c() const { return lambda_c_; }
  const GaussianScoreModel& model() const { return model_; }

  // Throws ConfigError for kGaussianDirect and on a dimension mismatch.
  double Score(std::span<const double> x) const;

 private:
  ScorerKind kind_ = ScorerKind::kCenterDistance;
  std::vector<double> center_;
  std::vector<double> abnormal_center_;
  double lambda_c_ = 0.0;
  GaussianScoreModel model_;
};

// Writes `mean + stddev * Normal(first + i)` into out[i].
void FillGaussian(const CounterRng& rng, std::uint64_t first, double mean,
                  double stddev, std::span<double> out);

// n0 normal draws from N(mu0, sigma0) followed by n1 abnormal draws from
// N(mua, sigmaa).
std::vector<LabeledScore> SampleGaussianScores(const GaussianScoreModel& m,
                                               std::size_t n0, std::size_t n1,
                                               std::uint64_t seed);

}  // namespace scoring_bias

#endif  // SCORING_BIAS_SYNTHETIC_H_
