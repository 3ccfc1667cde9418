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

#include "scoring_bias/synthetic.h"

#include <array>
#include <cmath>

#include "scoring_bias/error.h"

namespace scoring_bias {
namespace {

constexpr std::uint64_t kMixtureStream = 0x6D6978;  // "mix"
constexpr std::uint64_t kGaussianScoreStream = 0x67736E;
constexpr std::size_t kMaxDisplaced = 4;

std::uint64_t Stride(std::size_t dim) {
  return static_cast<std::uint64_t>(8 + dim + (dim % 2));
}

double AnomalyStdDev(const SyntheticConfig& cfg) {
  return cfg.spread_reading == SpreadReading::kStdDev
             ? cfg.anomaly_std
             : std::sqrt(cfg.anomaly_std);
}

std::vector<double> MeanFeatures(std::span<const DataPoint> points) {
  if (points.empty()) {
    Fail(ErrorCode::kEmptySample, "cannot fit a scorer on no points");
  }
  const std::size_t dim = points.front().features.size();
  std::vector<double> mean(dim, 0.0);
  for (const DataPoint& p : points) {
    if (p.features.size() != dim) {
      Fail(ErrorCode::kConfigError, "training points differ in dimension");
    }
    for (std::size_t i = 0; i < dim; ++i) mean[i] += p.features[i];
  }
  for (double& m : mean) m /= static_cast<double>(points.size());
  return mean;
}

double Distance(std::span<const double> x, const std::vector<double>& c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double d = x[i] - c[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

void ValidateConfig(const SyntheticConfig& cfg) {
  if (cfg.dim < kMaxDisplaced) {
    Fail(ErrorCode::kConfigError, "dim must be at least 4");
  }
  if (!std::isfinite(cfg.anomaly_mean)) {
    Fail(ErrorCode::kConfigError, "anomaly_mean must be finite");
  }
  if (!(cfg.anomaly_std > 0.0) || !std::isfinite(cfg.anomaly_std)) {
    Fail(ErrorCode::kConfigError, "anomaly_std must be positive");
  }
  if (!(cfg.p_three_dims >= 0.0 && cfg.p_three_dims <= 1.0)) {
    Fail(ErrorCode::kConfigError, "p_three_dims must lie in [0, 1]");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    Fail(ErrorCode::kConfigError, "alpha must lie in (0, 1)");
  }
}

int GeneratePoint(const SyntheticConfig& cfg, const CounterRng& rng,
                  std::uint64_t index, Label label, std::span<double> out) {
  const std::uint64_t base = index * Stride(cfg.dim);
  rng.FillNormal(base + 8, out.first(cfg.dim));
  if (label == Label::kNormal) return 0;

  const int displaced = rng.Uniform(base + 1) < cfg.p_three_dims ? 3 : 4;
  // Uniform subset without replacement: draw a rank among the coordinates
  // not yet chosen, then map it onto the coordinate index by skipping the
  // (sorted) chosen ones.
  std::array<std::size_t, kMaxDisplaced> chosen{};
  for (int k = 0; k < displaced; ++k) {
    const std::size_t remaining = cfg.dim - static_cast<std::size_t>(k);
    std::size_t idx = static_cast<std::size_t>(
        rng.Uniform(base + 2 + static_cast<std::uint64_t>(k)) *
        static_cast<double>(remaining));
    if (idx >= remaining) idx = remaining - 1;
    int pos = 0;
    for (; pos < k && chosen[pos] <= idx; ++pos) ++idx;
    for (int m = k; m > pos; --m) chosen[m] = chosen[m - 1];
    chosen[pos] = idx;
  }
  const double sd = AnomalyStdDev(cfg);
  for (int k = 0; k < displaced; ++k) {
    double& v = out[chosen[k]];
    v = cfg.anomaly_mean + sd * v;
  }
  return displaced;
}

std::vector<DataPoint> SampleDataset(const SyntheticConfig& cfg,
                                     std::size_t n) {
  ValidateConfig(cfg);
  if (n < 1) Fail(ErrorCode::kConfigError, "n must be at least 1");
  const CounterRng rng(StreamKey(cfg.seed, {kMixtureStream}));
  std::vector<DataPoint> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    DataPoint& p = points[i];
    const std::uint64_t base = i * Stride(cfg.dim);
    p.label = rng.Uniform(base) < cfg.alpha ? Label::kAbnormal : Label::kNormal;
    p.features.resize(cfg.dim);
    GeneratePoint(cfg, rng, i, p.label, p.features);
  }
  return points;
}

std::vector<DataPoint> SampleByClass(const SyntheticConfig& cfg,
                                     std::uint64_t stream_key,
                                     std::size_t n_normal,
                                     std::size_t n_abnormal) {
  ValidateConfig(cfg);
  const CounterRng normal_rng(StreamKey(stream_key, {0}));
  const CounterRng abnormal_rng(StreamKey(stream_key, {1}));
  std::vector<DataPoint> points(n_normal + n_abnormal);
  for (std::size_t i = 0; i < points.size(); ++i) {
    DataPoint& p = points[i];
    const bool normal = i < n_normal;
    p.label = normal ? Label::kNormal : Label::kAbnormal;
    p.features.resize(cfg.dim);
    GeneratePoint(cfg, normal ? normal_rng : abnormal_rng,
                  normal ? i : i - n_normal, p.label, p.features);
  }
  return points;
}

StandInScorer StandInScorer::FitCenter(std::span<const DataPoint> train_normal) {
  StandInScorer s;
  s.kind_ = ScorerKind::kCenterDistance;
  s.center_ = MeanFeatures(train_normal);
  return s;
}

StandInScorer StandInScorer::FitContrast(
    std::span<const DataPoint> train_normal,
    std::span<const DataPoint> train_abnormal, double lambda_c) {
  if (!(lambda_c >= 0.0) || !std::isfinite(lambda_c)) {
    Fail(ErrorCode::kConfigError, "lambda_c must be finite and >= 0");
  }
  StandInScorer s;
  s.kind_ = ScorerKind::kSupervisedContrast;
  s.center_ = MeanFeatures(train_normal);
  s.abnormal_center_ = MeanFeatures(train_abnormal);
  if (s.center_.size() != s.abnormal_center_.size()) {
    Fail(ErrorCode::kConfigError, "normal and abnormal training dims differ");
  }
  s.lambda_c_ = lambda_c;
  return s;
}

StandInScorer StandInScorer::GaussianDirect(const GaussianScoreModel& model) {
  ValidateModel(model);
  StandInScorer s;
  s.kind_ = ScorerKind::kGaussianDirect;
  s.model_ = model;
  return s;
}

double StandInScorer::Score(std::span<const double> x) const {
  if (kind_ == ScorerKind::kGaussianDirect) {
    Fail(ErrorCode::kConfigError,
         "a gaussian_direct scorer samples scores; it cannot score features");
  }
  if (x.size() != center_.size()) {
    Fail(ErrorCode::kConfigError, "feature dimension does not match scorer");
  }
  const double d = Distance(x, center_);
  if (kind_ == ScorerKind::kCenterDistance || lambda_c_ == 0.0) return d;
  return d - lambda_c_ * Distance(x, abnormal_center_);
}

void FillGaussian(const CounterRng& rng, std::uint64_t first, double mean,
                  double stddev, std::span<double> out) {
  rng.FillNormal(first, out);
  for (double& v : out) v = mean + stddev * v;
}

std::vector<LabeledScore> SampleGaussianScores(const GaussianScoreModel& m,
                                               std::size_t n0, std::size_t n1,
                                               std::uint64_t seed) {
  try {
    ValidateModel(m);
  } catch (const Error& e) {
    Fail(ErrorCode::kConfigError, e.what());
  }
  std::vector<double> normal(n0);
  std::vector<double> abnormal(n1);
  FillGaussian(CounterRng(StreamKey(seed, {kGaussianScoreStream, 0})), 0,
               m.mu0, m.sigma0, normal);
  FillGaussian(CounterRng(StreamKey(seed, {kGaussianScoreStream, 1})), 0,
               m.mua, m.sigmaa, abnormal);
  std::vector<LabeledScore> out;
  out.reserve(n0 + n1);
  for (double v : normal) out.push_back({v, Label::kNormal, {}});
  for (double v : abnormal) out.push_back({v, Label::kAbnormal, {}});
  return out;
}

}  // namespace scoring_bias
