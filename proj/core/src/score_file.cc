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

#include "scoring_bias/score_file.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <system_error>

#include "scoring_bias/error.h"

namespace scoring_bias {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::optional<double> ParseDecimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  // from_chars rejects a leading '+', which some exporters emit.
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

bool IsTagChar(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-';
}

[[noreturn]] void SchemaFail(const std::string& source, std::size_t line,
                             const std::string& what) {
  Fail(ErrorCode::kSchemaError,
       source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<LabeledScore> ScoreFile::Scores() const {
  std::vector<LabeledScore> out;
  out.reserve(rows.size());
  for (const ScoreRecord& r : rows) out.push_back(r.score);
  return out;
}

ScoreFile ParseScoreFile(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) SchemaFail(source_name, 1, "empty file, expected header");
  // Tolerate a UTF-8 byte order mark.
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

  ScoreFile file;
  int tag_col = -1;
  int sim_col = -1;
  const auto header = SplitFields(line);
  if (header.size() < 2 || header[0] != "score" || header[1] != "label") {
    SchemaFail(source_name, line_no,
               "header must start with 'score,label', got '" + line + "'");
  }
  for (std::size_t i = 2; i < header.size(); ++i) {
    if (header[i] == "class_tag" && tag_col < 0 && sim_col < 0) {
      tag_col = static_cast<int>(i);
    } else if (header[i] == "similarity" && sim_col < 0) {
      sim_col = static_cast<int>(i);
    } else {
      SchemaFail(source_name, line_no,
                 "unexpected header column '" + std::string(header[i]) + "'");
    }
  }
  file.has_class_tag = tag_col >= 0;
  file.has_similarity = sim_col >= 0;

  while (next_line()) {
    if (line.empty()) continue;
    const auto fields = SplitFields(line);
    if (fields.size() != header.size()) {
      SchemaFail(source_name, line_no,
                 "expected " + std::to_string(header.size()) + " fields, got " +
                     std::to_string(fields.size()));
    }
    ScoreRecord rec;
    const auto score = ParseDecimal(fields[0]);
    if (!score) {
      SchemaFail(source_name, line_no,
                 "score '" + std::string(fields[0]) + "' is not a decimal");
    }
    if (!std::isfinite(*score)) {
      SchemaFail(source_name, line_no, "score is not finite");
    }
    rec.score.score = *score;
    if (fields[1] == "0") {
      rec.score.label = Label::kNormal;
    } else if (fields[1] == "1") {
      rec.score.label = Label::kAbnormal;
    } else {
      SchemaFail(source_name, line_no,
                 "label must be 0 or 1, got '" + std::string(fields[1]) + "'");
    }
    if (tag_col >= 0) {
      const std::string_view tag = fields[static_cast<std::size_t>(tag_col)];
      for (char c : tag) {
        if (!IsTagChar(c)) {
          SchemaFail(source_name, line_no,
                     "class_tag '" + std::string(tag) +
                         "' must match [A-Za-z0-9_-]");
        }
      }
      rec.score.class_tag = std::string(tag);
    }
    if (sim_col >= 0) {
      const std::string_view text = fields[static_cast<std::size_t>(sim_col)];
      if (!text.empty()) {
        const auto sim = ParseDecimal(text);
        if (!sim || !std::isfinite(*sim)) {
          SchemaFail(source_name, line_no,
                     "similarity '" + std::string(text) + "' is not a decimal");
        }
        rec.similarity = *sim;
      }
    }
    file.rows.push_back(std::move(rec));
  }
  return file;
}

ScoreFile ReadScoreFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kSchemaError, path + ": cannot open file");
  return ParseScoreFile(in, path);
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void WriteScoreFile(std::ostream& out, const ScoreFile& file) {
  out << "score,label";
  if (file.has_class_tag) out << ",class_tag";
  if (file.has_similarity) out << ",similarity";
  out << '\n';
  for (const ScoreRecord& r : file.rows) {
    out << FormatDouble(r.score.score) << ','
        << (r.score.label == Label::kAbnormal ? '1' : '0');
    if (file.has_class_tag) out << ',' << r.score.class_tag;
    if (file.has_similarity) {
      out << ',';
      if (r.similarity) out << FormatDouble(*r.similarity);
    }
    out << '\n';
  }
}

}  // namespace scoring_bias
