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

// Monte-Carlo experiments on a fixed pair of scorers: quantile summaries of
// xi_hat and FPR over (n, alpha) grids, coverage of the finite-sample bound,
// and the n^{-1/2} convergence-rate check.
//
// Every run derives its randomness from (master_seed, role, cell, run), so
// results do not depend on the number of workers or on scheduling order.

#ifndef SCORING_BIAS_HARNESS_H_
#define SCORING_BIAS_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scoring_bias/bias.h"
#include "scoring_bias/detector.h"
#include "scoring_bias/sample_complexity.h"
#include "scoring_bias/synthetic.h"

namespace scoring_bias {

// Scores of the same draw under both scorers, split by class.
struct PairedScores {
  std::vector<double> normal_s;
  std::vector<double> abnormal_s;
  std::vector<double> normal_sprime;
  std::vector<double> abnormal_sprime;
};

// Produces paired scores for a given stream. Implementations are immutable
// and safe to call from several threads.
class ScorePairSource {
 public:
  virtual ~ScorePairSource() = default;
  virtual PairedScores Draw(std::uint64_t stream_key, std::size_t n_normal,
                            std::size_t n_abnormal) const = 0;
};

// Synthetic feature vectors scored by two stand-in scorers. Both scorers see
// the same points.
class FeatureScorerPair final : public ScorePairSource {
 public:
  FeatureScorerPair(SyntheticConfig cfg, StandInScorer s,
                    StandInScorer s_prime);

  PairedScores Draw(std::uint64_t stream_key, std::size_t n_normal,
                    std::size_t n_abnormal) const override;

  const StandInScorer& s() const { return s_; }
  const StandInScorer& s_prime() const { return s_prime_; }

 private:
  SyntheticConfig cfg_;
  StandInScorer s_;
  StandInScorer s_prime_;
};

// Scores drawn directly from two Gaussian score models, independently per
// scorer.
class GaussianScorerPair final : public ScorePairSource {
 public:
  GaussianScorerPair(const GaussianScoreModel& m,
                     const GaussianScoreModel& m_prime);

  PairedScores Draw(std::uint64_t stream_key, std::size_t n_normal,
                    std::size_t n_abnormal) const override;

  const GaussianScoreModel& m() const { return m_; }
  const GaussianScoreModel& m_prime() const { return m_prime_; }

 private:
  GaussianScoreModel m_;
  GaussianScoreModel m_prime_;
};

struct TrainingSetup {
  std::size_t train_normal = 10000;
  std::size_t train_abnormal = 1000;
  double lambda_c = 0.5;
};

// Trains the center-distance (baseline) and supervised-contrast scorers once
// on a training stream disjoint from every calibration and test stream.
FeatureScorerPair TrainStandInPair(const SyntheticConfig& cfg,
                                   std::uint64_t master_seed,
                                   const TrainingSetup& setup = {});

enum class ClassSplit {
  // round(alpha * n) abnormal points, so n1 > 0 whenever alpha * n >= 0.5.
  kDeterministic,
  // Each point abnormal independently with probability alpha.
  kBinomial,
};

enum class TestSetMode {
  // A fresh test set per run.
  kPerRun,
  // One test set per alpha value, shared by all runs and all n.
  kFixed,
};

struct ConvergenceGrid {
  std::vector<std::size_t> n_values = {100, 1000, 10000};
  std::vector<double> alpha_values = {0.01, 0.05, 0.1, 0.2};
  std::size_t runs = 1500;
  TargetLevel level;
  std::uint64_t master_seed = 0;
  std::size_t test_normal = 20000;
  ClassSplit split = ClassSplit::kDeterministic;
  TestSetMode test_set = TestSetMode::kPerRun;
  unsigned workers = 1;
};

void ValidateGrid(const ConvergenceGrid& grid);

struct SummaryStats {
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  // Sample standard deviation (n - 1 denominator).
  double std = 0.0;
};

// Quantiles use linear interpolation between order statistics. Throws
// EmptySample on no values.
SummaryStats Summarize(std::span<const double> values);

// Linear-interpolation quantile of sorted data, p in [0, 1].
double InterpolatedQuantile(std::span<const double> sorted, double p);

struct CellResult {
  std::size_t n = 0;
  double alpha = 0.0;
  SummaryStats xi;
  SummaryStats fpr;
  // Per-run values, in run order.
  std::vector<double> xi_runs;
  std::vector<double> fpr_runs;
};

struct QuantileSummary {
  // Ordered n-major: (n_values[0], alpha_values[0]), (n_values[0], ...).
  std::vector<CellResult> cells;

  const CellResult& Cell(std::size_t n, double alpha) const;
};

// For each run of each cell: draw a calibration set of size n, threshold both
// scorers on its normal scores, and measure FPR (of s) and xi_hat on a
// disjoint test set of test_normal normal and round(alpha * test_normal)
// abnormal points.
QuantileSummary RunConvergence(const ConvergenceGrid& grid,
                               const ScorePairSource& source);

enum class StreamRole : std::uint64_t {
  kTraining = 1,
  kCalibration = 2,
  kTest = 3,
  kFixedTest = 4,
  kSplit = 5,
  kCoverage = 6,
  kRate = 7,
};

// Stream keys consumed by one run of RunConvergence, for bookkeeping checks.
struct RunStreams {
  std::uint64_t calibration = 0;
  std::uint64_t test = 0;
};

RunStreams ConvergenceRunStreams(const ConvergenceGrid& grid,
                                 std::size_t cell_index, std::size_t run);

struct CoverageOptions {
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  // Upper bound on prescribed_n * 2 * trials score draws.
  double max_draws = 1e9;
  unsigned workers = 1;
  TargetLevel level;
};

struct CoverageReport {
  std::uint64_t prescribed_n = 0;
  std::size_t n_normal = 0;
  std::size_t n_abnormal = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double observed_violation_rate = 0.0;
  // 3 * sqrt(delta (1 - delta) / trials).
  double mc_slack = 0.0;
  double xi_true = 0.0;
  double mean_abs_error = 0.0;
  double max_abs_error = 0.0;
};

// Samples prescribed_n = RequiredSamples(c) mixture points per trial
// (round(alpha * n) abnormal), computes xi_hat with thresholds on the same
// sample, and counts |xi_hat - xi_true| > epsilon. ConfigError when
// trials < 100, TooLarge when the draw budget is exceeded.
CoverageReport RunCoverage(const ComplexityInput& c,
                           const GaussianScoreModel& m,
                           const GaussianScoreModel& m_prime,
                           const CoverageOptions& options);

struct RateCheckOptions {
  std::vector<std::size_t> n_values = {100, 1000, 10000, 100000};
  std::size_t runs = 500;
  double alpha = 0.2;
  TargetLevel level;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct RatePoint {
  std::size_t n = 0;
  double mean_xi = 0.0;
  double std_xi = 0.0;
};

inline constexpr std::size_t kLowConfidenceRuns = 30;

struct RateCheckResult {
  std::vector<RatePoint> points;
  // Least-squares slope of log(std xi_hat) against log(n). NaN when
  // undefined.
  double slope = 0.0;
  double intercept = 0.0;
  // False when some std is zero, e.g. for an identical scorer pair.
  bool defined = true;
  // Too few runs per n for a trustworthy std.
  bool low_confidence = false;
};

// ConfigError unless the ladder spans at least two decades and runs >= 2.
RateCheckResult RunRateCheck(const ScorePairSource& source,
                             const RateCheckOptions& options);

}  // namespace scoring_bias

#endif  // SCORING_BIAS_HARNESS_H_
