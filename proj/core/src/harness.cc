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

#include "scoring_bias/harness.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "parallel.h"
#include "scoring_bias/error.h"

namespace scoring_bias {
namespace {

std::uint64_t Role(StreamRole r) { return static_cast<std::uint64_t>(r); }

std::size_t RoundedCount(double alpha, std::size_t n) {
  return static_cast<std::size_t>(std::llround(alpha * static_cast<double>(n)));
}

std::size_t CountAbove(std::span<const double> values, double tau) {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(),
                    [tau](double v) { return v > tau; }));
}

double Fraction(std::size_t count, std::size_t total) {
  return static_cast<double>(count) / static_cast<double>(total);
}

// Sorted test-set scores, shared by all runs in TestSetMode::kFixed.
struct FixedTestSet {
  EmpiricalCdf normal_s;
  EmpiricalCdf abnormal_s;
  EmpiricalCdf normal_sprime;
  EmpiricalCdf abnormal_sprime;
};

FixedTestSet BuildFixedTestSet(const ScorePairSource& source,
                               std::uint64_t key, std::size_t n_normal,
                               std::size_t n_abnormal) {
  PairedScores t = source.Draw(key, n_normal, n_abnormal);
  return FixedTestSet{EmpiricalCdf::Build(std::move(t.normal_s)),
                      EmpiricalCdf::Build(std::move(t.abnormal_s)),
                      EmpiricalCdf::Build(std::move(t.normal_sprime)),
                      EmpiricalCdf::Build(std::move(t.abnormal_sprime))};
}

}  // namespace

FeatureScorerPair::FeatureScorerPair(SyntheticConfig cfg, StandInScorer s,
                                     StandInScorer s_prime)
    : cfg_(cfg), s_(std::move(s)), s_prime_(std::move(s_prime)) {
  ValidateConfig(cfg_);
  if (s_.kind() == ScorerKind::kGaussianDirect ||
      s_prime_.kind() == ScorerKind::kGaussianDirect) {
    Fail(ErrorCode::kConfigError,
         "feature scorer pair needs feature-based scorers");
  }
  if (s_.center().size() != cfg_.dim || s_prime_.center().size() != cfg_.dim) {
    Fail(ErrorCode::kConfigError, "scorer dimension does not match config");
  }
}

PairedScores FeatureScorerPair::Draw(std::uint64_t stream_key,
                                     std::size_t n_normal,
                                     std::size_t n_abnormal) const {
  PairedScores out;
  out.normal_s.resize(n_normal);
  out.normal_sprime.resize(n_normal);
  out.abnormal_s.resize(n_abnormal);
  out.abnormal_sprime.resize(n_abnormal);
  std::vector<double> x(cfg_.dim);
  const CounterRng normal_rng(StreamKey(stream_key, {0}));
  for (std::size_t i = 0; i < n_normal; ++i) {
    GeneratePoint(cfg_, normal_rng, i, Label::kNormal, x);
    out.normal_s[i] = s_.Score(x);
    out.normal_sprime[i] = s_prime_.Score(x);
  }
  const CounterRng abnormal_rng(StreamKey(stream_key, {1}));
  for (std::size_t i = 0; i < n_abnormal; ++i) {
    GeneratePoint(cfg_, abnormal_rng, i, Label::kAbnormal, x);
    out.abnormal_s[i] = s_.Score(x);
    out.abnormal_sprime[i] = s_prime_.Score(x);
  }
  return out;
}

GaussianScorerPair::GaussianScorerPair(const GaussianScoreModel& m,
                                       const GaussianScoreModel& m_prime)
    : m_(m), m_prime_(m_prime) {
  ValidateModel(m_);
  ValidateModel(m_prime_);
}

PairedScores GaussianScorerPair::Draw(std::uint64_t stream_key,
                                      std::size_t n_normal,
                                      std::size_t n_abnormal) const {
  PairedScores out;
  out.normal_s.resize(n_normal);
  out.abnormal_s.resize(n_abnormal);
  out.normal_sprime.resize(n_normal);
  out.abnormal_sprime.resize(n_abnormal);
  FillGaussian(CounterRng(StreamKey(stream_key, {0})), 0, m_.mu0, m_.sigma0,
               out.normal_s);
  FillGaussian(CounterRng(StreamKey(stream_key, {1})), 0, m_.mua, m_.sigmaa,
               out.abnormal_s);
  FillGaussian(CounterRng(StreamKey(stream_key, {2})), 0, m_prime_.mu0,
               m_prime_.sigma0, out.normal_sprime);
  FillGaussian(CounterRng(StreamKey(stream_key, {3})), 0, m_prime_.mua,
               m_prime_.sigmaa, out.abnormal_sprime);
  return out;
}

FeatureScorerPair TrainStandInPair(const SyntheticConfig& cfg,
                                   std::uint64_t master_seed,
                                   const TrainingSetup& setup) {
  const std::uint64_t key = StreamKey(master_seed, {Role(StreamRole::kTraining)});
  const std::vector<DataPoint> train =
      SampleByClass(cfg, key, setup.train_normal, setup.train_abnormal);
  const std::span<const DataPoint> all(train);
  const auto normal = all.first(setup.train_normal);
  const auto abnormal = all.subspan(setup.train_normal);
  return FeatureScorerPair(
      cfg, StandInScorer::FitCenter(normal),
      StandInScorer::FitContrast(normal, abnormal, setup.lambda_c));
}

void ValidateGrid(const ConvergenceGrid& grid) {
  if (grid.n_values.empty() || grid.alpha_values.empty()) {
    Fail(ErrorCode::kConfigError, "grid needs at least one n and one alpha");
  }
  for (std::size_t n : grid.n_values) {
    if (n < 2) Fail(ErrorCode::kConfigError, "every n must be at least 2");
  }
  for (double a : grid.alpha_values) {
    if (!(a > 0.0 && a < 1.0)) {
      Fail(ErrorCode::kConfigError, "every alpha must lie in (0, 1)");
    }
    if (RoundedCount(a, grid.test_normal) < 1) {
      Fail(ErrorCode::kConfigError,
           "alpha * test_normal rounds to zero abnormal test points");
    }
  }
  if (grid.runs < 2) Fail(ErrorCode::kConfigError, "runs must be at least 2");
  if (grid.test_normal < 1) {
    Fail(ErrorCode::kConfigError, "test_normal must be at least 1");
  }
  if (grid.level.mode != LevelMode::kFixFpr) {
    Fail(ErrorCode::kConfigError, "convergence runs use the fixed-FPR mode");
  }
  try {
    ValidateLevel(grid.level);
  } catch (const Error& e) {
    Fail(ErrorCode::kConfigError, e.what());
  }
}

double InterpolatedQuantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) Fail(ErrorCode::kEmptySample, "no values to summarize");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SummaryStats Summarize(std::span<const double> values) {
  if (values.empty()) Fail(ErrorCode::kEmptySample, "no values to summarize");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  SummaryStats s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.q25 = InterpolatedQuantile(sorted, 0.25);
  s.median = InterpolatedQuantile(sorted, 0.5);
  s.q75 = InterpolatedQuantile(sorted, 0.75);
  // Summed in run order so the result is independent of scheduling.
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

const CellResult& QuantileSummary::Cell(std::size_t n, double alpha) const {
  for (const CellResult& c : cells) {
    if (c.n == n && c.alpha == alpha) return c;
  }
  Fail(ErrorCode::kIndexOutOfRange, "no such (n, alpha) cell");
}

RunStreams ConvergenceRunStreams(const ConvergenceGrid& grid,
                                 std::size_t cell_index, std::size_t run) {
  RunStreams s;
  s.calibration = StreamKey(grid.master_seed, {Role(StreamRole::kCalibration),
                                               cell_index, run});
  if (grid.test_set == TestSetMode::kPerRun) {
    s.test = StreamKey(grid.master_seed,
                       {Role(StreamRole::kTest), cell_index, run});
  } else {
    const std::size_t alpha_index = cell_index % grid.alpha_values.size();
    s.test = StreamKey(grid.master_seed,
                       {Role(StreamRole::kFixedTest), alpha_index});
  }
  return s;
}

QuantileSummary RunConvergence(const ConvergenceGrid& grid,
                               const ScorePairSource& source) {
  ValidateGrid(grid);
  const std::size_t n_alpha = grid.alpha_values.size();
  const std::size_t n_cells = grid.n_values.size() * n_alpha;

  std::vector<std::optional<FixedTestSet>> fixed(n_alpha);
  if (grid.test_set == TestSetMode::kFixed) {
    internal::ParallelFor(n_alpha, grid.workers, [&](std::size_t a) {
      fixed[a] = BuildFixedTestSet(
          source, ConvergenceRunStreams(grid, a, 0).test, grid.test_normal,
          RoundedCount(grid.alpha_values[a], grid.test_normal));
    });
  }

  std::vector<double> xi(n_cells * grid.runs);
  std::vector<double> fpr(n_cells * grid.runs);

  internal::ParallelFor(n_cells * grid.runs, grid.workers, [&](std::size_t task) {
    const std::size_t cell = task / grid.runs;
    const std::size_t run = task % grid.runs;
    const std::size_t n = grid.n_values[cell / n_alpha];
    const double alpha = grid.alpha_values[cell % n_alpha];
    const RunStreams streams = ConvergenceRunStreams(grid, cell, run);

    std::size_t n1 = 0;
    if (grid.split == ClassSplit::kDeterministic) {
      n1 = RoundedCount(alpha, n);
    } else {
      const CounterRng split(StreamKey(grid.master_seed,
                                       {Role(StreamRole::kSplit), cell, run}));
      for (std::size_t i = 0; i < n; ++i) n1 += split.Uniform(i) < alpha;
    }
    // Thresholds need at least one normal calibration score.
    n1 = std::min(n1, n - 1);
    const std::size_t n0 = n - n1;

    PairedScores calib = source.Draw(streams.calibration, n0, n1);
    const double tau = ThresholdForLevel(
        EmpiricalCdf::Build(std::move(calib.normal_s)), grid.level);
    const double tau_prime = ThresholdForLevel(
        EmpiricalCdf::Build(std::move(calib.normal_sprime)), grid.level);

    double tpr = 0.0;
    double tpr_prime = 0.0;
    if (grid.test_set == TestSetMode::kFixed) {
      const FixedTestSet& t = *fixed[cell % n_alpha];
      fpr[task] = FractionAbove(t.normal_s, tau);
      tpr = FractionAbove(t.abnormal_s, tau);
      tpr_prime = FractionAbove(t.abnormal_sprime, tau_prime);
    } else {
      const PairedScores test = source.Draw(
          streams.test, grid.test_normal,
          RoundedCount(alpha, grid.test_normal));
      fpr[task] = Fraction(CountAbove(test.normal_s, tau), test.normal_s.size());
      tpr = Fraction(CountAbove(test.abnormal_s, tau), test.abnormal_s.size());
      tpr_prime = Fraction(CountAbove(test.abnormal_sprime, tau_prime),
                           test.abnormal_sprime.size());
    }
    xi[task] = tpr_prime - tpr;
  });

  QuantileSummary summary;
  summary.cells.reserve(n_cells);
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    CellResult r;
    r.n = grid.n_values[cell / n_alpha];
    r.alpha = grid.alpha_values[cell % n_alpha];
    const auto first = static_cast<std::ptrdiff_t>(cell * grid.runs);
    const auto last = first + static_cast<std::ptrdiff_t>(grid.runs);
    r.xi_runs.assign(xi.begin() + first, xi.begin() + last);
    r.fpr_runs.assign(fpr.begin() + first, fpr.begin() + last);
    r.xi = Summarize(r.xi_runs);
    r.fpr = Summarize(r.fpr_runs);
    summary.cells.push_back(std::move(r));
  }
  return summary;
}

CoverageReport RunCoverage(const ComplexityInput& c,
                           const GaussianScoreModel& m,
                           const GaussianScoreModel& m_prime,
                           const CoverageOptions& options) {
  if (options.trials < 100) {
    Fail(ErrorCode::kConfigError, "coverage needs at least 100 trials");
  }
  const std::uint64_t n = RequiredSamples(c);
  const double draws =
      static_cast<double>(n) * 2.0 * static_cast<double>(options.trials);
  if (draws > options.max_draws) {
    Fail(ErrorCode::kTooLarge,
         "coverage needs " + std::to_string(draws) +
             " score draws, above the budget of " +
             std::to_string(options.max_draws));
  }
  const GaussianScorerPair source(m, m_prime);
  CoverageReport report;
  report.prescribed_n = n;
  report.n_abnormal = std::max<std::size_t>(
      1, RoundedCount(c.alpha, static_cast<std::size_t>(n)));
  report.n_normal = static_cast<std::size_t>(n) - report.n_abnormal;
  if (report.n_normal < 1) {
    Fail(ErrorCode::kConfigError, "prescribed sample has no normal points");
  }
  report.epsilon = c.epsilon;
  report.delta = c.delta;
  report.alpha = c.alpha;
  report.trials = options.trials;
  report.xi_true = GaussianRelativeBias(m, m_prime, options.level.q).xi;
  report.mc_slack = 3.0 * std::sqrt(c.delta * (1.0 - c.delta) /
                                    static_cast<double>(options.trials));

  std::vector<double> error(options.trials);
  internal::ParallelFor(options.trials, options.workers, [&](std::size_t t) {
    PairedScores s = source.Draw(
        StreamKey(options.seed, {Role(StreamRole::kCoverage), t}),
        report.n_normal, report.n_abnormal);
    const BiasEstimate est = EmpiricalRelativeBias(
        EmpiricalCdf::Build(std::move(s.normal_s)),
        EmpiricalCdf::Build(std::move(s.abnormal_s)),
        EmpiricalCdf::Build(std::move(s.normal_sprime)),
        EmpiricalCdf::Build(std::move(s.abnormal_sprime)), options.level);
    error[t] = std::abs(est.xi - report.xi_true);
  });
  double sum = 0.0;
  for (double e : error) {
    report.violations += e > c.epsilon;
    report.max_abs_error = std::max(report.max_abs_error, e);
    sum += e;
  }
  report.mean_abs_error = sum / static_cast<double>(options.trials);
  report.observed_violation_rate =
      static_cast<double>(report.violations) /
      static_cast<double>(options.trials);
  return report;
}

RateCheckResult RunRateCheck(const ScorePairSource& source,
                             const RateCheckOptions& options) {
  const auto& ns = options.n_values;
  if (ns.size() < 2) {
    Fail(ErrorCode::kConfigError, "rate check needs at least two n values");
  }
  const auto [lo, hi] = std::minmax_element(ns.begin(), ns.end());
  if (*lo < 2 || static_cast<double>(*hi) < 100.0 * static_cast<double>(*lo)) {
    Fail(ErrorCode::kConfigError,
         "rate check ladder must span at least two decades");
  }
  if (options.runs < 2) {
    Fail(ErrorCode::kConfigError, "rate check needs at least 2 runs");
  }
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    Fail(ErrorCode::kConfigError, "alpha must lie in (0, 1)");
  }

  std::vector<double> xi(ns.size() * options.runs);
  internal::ParallelFor(xi.size(), options.workers, [&](std::size_t task) {
    const std::size_t rung = task / options.runs;
    const std::size_t run = task % options.runs;
    const std::size_t n = ns[rung];
    const std::size_t n1 =
        std::clamp<std::size_t>(RoundedCount(options.alpha, n), 1, n - 1);
    PairedScores s = source.Draw(
        StreamKey(options.seed, {Role(StreamRole::kRate), rung, run}), n - n1,
        n1);
    xi[task] = EmpiricalRelativeBias(
                   EmpiricalCdf::Build(std::move(s.normal_s)),
                   EmpiricalCdf::Build(std::move(s.abnormal_s)),
                   EmpiricalCdf::Build(std::move(s.normal_sprime)),
                   EmpiricalCdf::Build(std::move(s.abnormal_sprime)),
                   options.level)
                   .xi;
  });

  RateCheckResult result;
  result.low_confidence = options.runs < kLowConfidenceRuns;
  std::vector<double> log_n;
  std::vector<double> log_std;
  for (std::size_t rung = 0; rung < ns.size(); ++rung) {
    const std::span<const double> values(xi.data() + rung * options.runs,
                                         options.runs);
    const SummaryStats stats = Summarize(values);
    result.points.push_back({ns[rung], stats.mean, stats.std});
    if (!(stats.std > 1e-15)) result.defined = false;
    log_n.push_back(std::log(static_cast<double>(ns[rung])));
    log_std.push_back(std::log(stats.std));
  }
  if (!result.defined) {
    result.slope = std::numeric_limits<double>::quiet_NaN();
    result.intercept = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  const double k = static_cast<double>(log_n.size());
  const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / k;
  const double my = std::accumulate(log_std.begin(), log_std.end(), 0.0) / k;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sxy += (log_n[i] - mx) * (log_std[i] - my);
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
  }
  result.slope = sxy / sxx;
  result.intercept = my - result.slope * mx;
  return result;
}

}  // namespace scoring_bias
