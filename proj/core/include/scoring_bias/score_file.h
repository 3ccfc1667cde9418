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

// Score files: UTF-8 CSV, LF line endings, header
//
//   score,label[,class_tag][,similarity]
//
// score is a finite decimal (plain or scientific), label is 0 (normal) or 1
// (abnormal), class_tag matches [A-Za-z0-9_-]* and similarity is an optional
// decimal. Optional cells may be left empty on individual rows.

#ifndef SCORING_BIAS_SCORE_FILE_H_
#define SCORING_BIAS_SCORE_FILE_H_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scoring_bias/ecdf.h"

namespace scoring_bias {

struct ScoreRecord {
  LabeledScore score;
  std::optional<double> similarity;
};

struct ScoreFile {
  bool has_class_tag = false;
  bool has_similarity = false;
  std::vector<ScoreRecord> rows;

  std::vector<LabeledScore> Scores() const;
};

// Throws SchemaError with a "<source>:<line>: " prefix on malformed input,
// including an empty stream.
ScoreFile ParseScoreFile(std::istream& in, const std::string& source_name);
ScoreFile ReadScoreFile(const std::string& path);

void WriteScoreFile(std::ostream& out, const ScoreFile& file);

// Shortest decimal that parses back to exactly `v`.
std::string FormatDouble(double v);

}  // namespace scoring_bias

#endif  // SCORING_BIAS_SCORE_FILE_H_
