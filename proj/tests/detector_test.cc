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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "scoring_bias/score_file.h"
#include "test_util.h"

namespace scoring_bias {
namespace {

using testing::CodeOf;
using testing::Fixture;

std::vector<LabeledScore> Labeled(const std::vector<double>& normal,
                                  const std::vector<double>& abnormal) {
  std::vector<LabeledScore> out;
  for (double v : normal) out.push_back({v, Label::kNormal, ""});
  for (double v : abnormal) out.push_back({v, Label::kAbnormal, ""});
  return out;
}

std::vector<double> Range(int lo, int hi) {
  std::vector<double> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// Smallest sample value tau with 1000 * #{v <= tau} >= a * n, i.e.
// F_hat(tau) >= a / 1000, found by scanning every candidate.
double ScanThreshold(const std::vector<double>& normal, int a) {
  double best = std::numeric_limits<double>::infinity();
  for (double tau : normal) {
    long long count = 0;
    for (double v : normal) count += v <= tau;
    if (1000 * count >= static_cast<long long>(a) *
                            static_cast<long long>(normal.size())) {
      best = std::min(best, tau);
    }
  }
  return best;
}

double ScanFraction(const std::vector<double>& v, double tau) {
  long long above = 0;
  for (double x : v) above += x > tau;
  return static_cast<double>(above) / static_cast<double>(v.size());
}

TEST(DetectorTest, FixtureThresholdAndRates) {
  const ScoreFile file = ReadScoreFile(Fixture("detector_s.csv"));
  const DetectorEvaluation ev = EvaluateDetector(file.Scores(), TargetLevel{});
  EXPECT_DOUBLE_EQ(ev.threshold, 95.0);
  EXPECT_EQ(ev.rank, 95u);
  EXPECT_DOUBLE_EQ(ev.tpr, 0.7);
  EXPECT_DOUBLE_EQ(ev.fpr, 0.05);
  EXPECT_EQ(ev.n_normal, 100u);
  EXPECT_EQ(ev.n_abnormal, 20u);
  EXPECT_TRUE(ev.warnings.empty());

  const DetectorEvaluation ev2 = EvaluateDetector(
      ReadScoreFile(Fixture("detector_sprime.csv")).Scores(), TargetLevel{});
  EXPECT_DOUBLE_EQ(ev2.threshold, 95.0);
  EXPECT_DOUBLE_EQ(ev2.tpr, 1.0);
}

TEST(DetectorTest, ScoresEqualToThresholdAreNotFlagged) {
  // Abnormal scores sitting exactly on tau count as misses.
  const auto scores = Labeled(Range(1, 100), {95, 95, 96, 97});
  const DetectorEvaluation ev = EvaluateDetector(scores, TargetLevel{});
  EXPECT_DOUBLE_EQ(ev.threshold, 95.0);
  EXPECT_DOUBLE_EQ(ev.tpr, 0.5);
}

TEST(DetectorTest, RankUsesExactRationalProduct) {
  // 0.07 * 100 is 7.000000000000001 in binary floating point.
  const EmpiricalCdf cdf = EmpiricalCdf::Build(Range(1, 100));
  EXPECT_EQ(ChooseThreshold(cdf, {0.07, LevelMode::kFixFpr}).rank, 7u);
  EXPECT_EQ(ChooseThreshold(cdf, {0.29, LevelMode::kFixFpr}).rank, 29u);
  EXPECT_EQ(ChooseThreshold(cdf, {0.951, LevelMode::kFixFpr}).rank, 96u);
  EXPECT_EQ(ChooseThreshold(cdf, {0.951, LevelMode::kFixFpr},
                            ThresholdRule::kLiteralMax)
                .rank,
            95u);
}

TEST(DetectorTest, FixTprDual) {
  // q = 0.8 on 20 abnormal scores: floor(0.2 * 20) = 4th smallest.
  const auto scores = Labeled(Range(1, 100), Range(81, 100));
  const DetectorEvaluation ev =
      EvaluateDetector(scores, TargetLevel{0.8, LevelMode::kFixTpr});
  EXPECT_DOUBLE_EQ(ev.threshold, 84.0);
  EXPECT_DOUBLE_EQ(ev.tpr, 0.8);
  EXPECT_DOUBLE_EQ(ev.fpr, 0.16);
}

TEST(DetectorTest, SmallSampleWarnsAndClamps) {
  const auto scores = Labeled(Range(1, 10), Range(5, 14));
  const DetectorEvaluation tpr_mode =
      EvaluateDetector(scores, TargetLevel{0.95, LevelMode::kFixTpr});
  EXPECT_EQ(tpr_mode.rank, 1u);
  EXPECT_FALSE(tpr_mode.warnings.empty());

  // 1 - q = 0.05 on 10 normal scores: 0.5 false positives allowed.
  const DetectorEvaluation fpr_mode = EvaluateDetector(scores, TargetLevel{});
  EXPECT_EQ(fpr_mode.rank, 10u);
  EXPECT_DOUBLE_EQ(fpr_mode.fpr, 0.0);
}

TEST(DetectorTest, Errors) {
  EXPECT_EQ(CodeOf([] {
              EvaluateDetector(Labeled({1, 2, 3}, {}), TargetLevel{});
            }),
            ErrorCode::kMissingClass);
  EXPECT_EQ(CodeOf([] {
              EvaluateDetector(Labeled({}, {1, 2}), TargetLevel{});
            }),
            ErrorCode::kMissingClass);
  for (double q : {0.0, 1.0, -0.5, 1.5, std::nan("")}) {
    EXPECT_EQ(CodeOf([q] {
                EvaluateDetector(Labeled({1, 2}, {3}), TargetLevel{q});
              }),
              ErrorCode::kDomainError);
  }
}

TEST(DetectorPropertyTest, MatchesThresholdScan) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> size(1, 120);
  std::uniform_int_distribution<int> level(1, 999);
  std::uniform_int_distribution<int> grid(0, 40);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<double> normal(static_cast<std::size_t>(size(gen)));
    std::vector<double> abnormal(static_cast<std::size_t>(size(gen)));
    // Coarse grid so ties are common.
    for (double& v : normal) v = 0.25 * grid(gen);
    for (double& v : abnormal) v = 0.25 * grid(gen) + 1.0;
    const int a = level(gen);
    const double q = a / 1000.0;
    const DetectorEvaluation ev =
        EvaluateDetector(Labeled(normal, abnormal), TargetLevel{q});
    const double tau = ScanThreshold(normal, a);
    ASSERT_EQ(ev.threshold, tau) << "n0=" << normal.size() << " q=" << q;
    ASSERT_EQ(ev.fpr, ScanFraction(normal, tau));
    ASSERT_EQ(ev.tpr, ScanFraction(abnormal, tau));
    // The constraint rule never exceeds the FPR budget.
    ASSERT_LE(1000 * ev.fpr * normal.size(),
              (1000 - a) * static_cast<double>(normal.size()) + 1e-6);
  }
}

TEST(DetectorPropertyTest, InvariantUnderMonotoneTransform) {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> normal(200), abnormal(50);
    for (double& v : normal) v = nd(gen);
    for (double& v : abnormal) v = nd(gen) + 1.5;
    auto g = [](double x) { return 3.0 * std::exp(x / 2.0) - 7.0; };
    std::vector<double> gn = normal, ga = abnormal;
    std::transform(gn.begin(), gn.end(), gn.begin(), g);
    std::transform(ga.begin(), ga.end(), ga.begin(), g);
    for (LevelMode mode : {LevelMode::kFixFpr, LevelMode::kFixTpr}) {
      const TargetLevel lvl{0.9, mode};
      const auto a = EvaluateDetector(Labeled(normal, abnormal), lvl);
      const auto b = EvaluateDetector(Labeled(gn, ga), lvl);
      EXPECT_EQ(a.tpr, b.tpr);
      EXPECT_EQ(a.fpr, b.fpr);
      EXPECT_EQ(a.rank, b.rank);
      EXPECT_DOUBLE_EQ(g(a.threshold), b.threshold);
    }
  }
}

TEST(DetectorPropertyTest, RatesMonotoneInLevel) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  std::vector<double> normal(500), abnormal(100);
  for (double& v : normal) v = nd(gen);
  for (double& v : abnormal) v = nd(gen) + 1.0;
  const auto scores = Labeled(normal, abnormal);
  double prev_tpr = 1.0, prev_fpr = 1.0;
  for (int a = 5; a < 1000; a += 5) {
    const auto ev = EvaluateDetector(scores, TargetLevel{a / 1000.0});
    EXPECT_LE(ev.tpr, prev_tpr);
    EXPECT_LE(ev.fpr, prev_fpr);
    prev_tpr = ev.tpr;
    prev_fpr = ev.fpr;
  }
}

TEST(DetectorPropertyTest, PermutationInvariant) {
  std::mt19937_64 gen(17);
  std::normal_distribution<double> nd;
  auto scores = Labeled(std::vector<double>(300), std::vector<double>(40));
  for (auto& s : scores) s.score = nd(gen) + (s.label == Label::kAbnormal);
  const auto a = EvaluateDetector(scores, TargetLevel{});
  std::shuffle(scores.begin(), scores.end(), gen);
  const auto b = EvaluateDetector(scores, TargetLevel{});
  EXPECT_EQ(a.threshold, b.threshold);
  EXPECT_EQ(a.tpr, b.tpr);
  EXPECT_EQ(a.fpr, b.fpr);
}

}  // namespace
}  // namespace scoring_bias
