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

#include <sstream>

#include <gtest/gtest.h>

#include "test_util.h"

namespace scoring_bias {
namespace {

using testing::CodeOf;
using testing::Fixture;

ScoreFile Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseScoreFile(in, "mem");
}

TEST(ScenarioTest, FixtureRowsOrderedBySimilarity) {
  const ScenarioReport r =
      RunScenarioReport(ReadScoreFile(Fixture("scenario_baseline.csv")),
                        ReadScoreFile(Fixture("scenario_treatment.csv")),
                        TargetLevel{});
  EXPECT_DOUBLE_EQ(r.threshold_baseline, 95.0);
  EXPECT_DOUBLE_EQ(r.threshold_treatment, 95.0);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].bias.class_tag, "shirt");
  EXPECT_DOUBLE_EQ(r.rows[0].bias.tpr_baseline, 0.09);
  EXPECT_DOUBLE_EQ(r.rows[0].bias.tpr_treatment, 0.71);
  EXPECT_EQ(r.rows[0].bias.direction, Direction::kUpward);
  EXPECT_DOUBLE_EQ(*r.rows[0].similarity, 0.82);
  EXPECT_EQ(r.rows[1].bias.class_tag, "boot");
  EXPECT_DOUBLE_EQ(r.rows[1].bias.tpr_baseline, 0.92);
  EXPECT_DOUBLE_EQ(r.rows[1].bias.tpr_treatment, 0.29);
  EXPECT_EQ(r.rows[1].bias.direction, Direction::kDownward);
  EXPECT_EQ(r.rows[1].n_abnormal_baseline, 100u);
}

TEST(ScenarioTest, FirstAppearanceOrderWithoutSimilarity) {
  const std::string base =
      "score,label,class_tag\n1,0,\n2,0,\n3,0,\n9,1,b\n0,1,a\n";
  const std::string treat =
      "score,label,class_tag\n1,0,\n2,0,\n3,0,\n0,1,b\n9,1,a\n";
  const ScenarioReport r =
      RunScenarioReport(Parse(base), Parse(treat), TargetLevel{0.5});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].bias.class_tag, "b");
  EXPECT_EQ(r.rows[0].bias.direction, Direction::kDownward);
  EXPECT_EQ(r.rows[1].bias.class_tag, "a");
  EXPECT_EQ(r.rows[1].bias.direction, Direction::kUpward);
  EXPECT_FALSE(r.rows[0].similarity);
}

TEST(ScenarioTest, UntaggedAbnormalRowsFormOneClass) {
  const std::string f = "score,label\n1,0\n2,0\n5,1\n";
  const ScenarioReport r = RunScenarioReport(Parse(f), Parse(f), TargetLevel{});
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].bias.class_tag, kUntaggedClass);
  EXPECT_EQ(r.rows[0].bias.direction, Direction::kFlat);
}

TEST(ScenarioTest, Errors) {
  const ScoreFile ab = Parse("score,label,class_tag\n1,0,\n3,1,a\n4,1,b\n");
  const ScoreFile a = Parse("score,label,class_tag\n1,0,\n3,1,a\n");
  const ScoreFile no_normal = Parse("score,label,class_tag\n3,1,a\n");
  const ScoreFile no_abnormal = Parse("score,label\n3,0\n");
  EXPECT_EQ(CodeOf([&] { RunScenarioReport(ab, a, TargetLevel{}); }),
            ErrorCode::kClassMismatch);
  EXPECT_EQ(CodeOf([&] { RunScenarioReport(a, ab, TargetLevel{}); }),
            ErrorCode::kClassMismatch);
  EXPECT_EQ(CodeOf([&] { RunScenarioReport(no_normal, a, TargetLevel{}); }),
            ErrorCode::kMissingClass);
  EXPECT_EQ(CodeOf([&] { RunScenarioReport(a, no_abnormal, TargetLevel{}); }),
            ErrorCode::kMissingClass);
  EXPECT_EQ(CodeOf([&] {
              RunScenarioReport(a, a, TargetLevel{0.9, LevelMode::kFixTpr});
            }),
            ErrorCode::kDomainError);
}

}  // namespace
}  // namespace scoring_bias
