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

#include "report_io.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "scoring_bias/error.h"
#include "scoring_bias/score_file.h"

namespace scoring_bias {

using nlohmann::json;

namespace {

LevelMode ParseMode(const std::string& s) {
  if (s == "fix_fpr") return LevelMode::kFixFpr;
  if (s == "fix_tpr") return LevelMode::kFixTpr;
  Fail(ErrorCode::kSchemaError, "unknown level mode '" + s + "'");
}

std::string ModeName(LevelMode m) {
  return m == LevelMode::kFixFpr ? "fix_fpr" : "fix_tpr";
}

BiasKind ParseKind(const std::string& s) {
  for (BiasKind k : {BiasKind::kEmpirical, BiasKind::kPlugin,
                     BiasKind::kGaussian}) {
    if (BiasKindName(k) == s) return k;
  }
  Fail(ErrorCode::kSchemaError, "unknown bias kind '" + s + "'");
}

Direction ParseDirection(const std::string& s) {
  for (Direction d :
       {Direction::kUpward, Direction::kDownward, Direction::kFlat}) {
    if (DirectionName(d) == s) return d;
  }
  Fail(ErrorCode::kSchemaError, "unknown direction '" + s + "'");
}

std::string Sig6(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

void to_json(json& j, const TargetLevel& v) {
  j = json{{"q", v.q}, {"mode", ModeName(v.mode)}};
}

void from_json(const json& j, TargetLevel& v) {
  v.q = j.at("q").get<double>();
  v.mode = ParseMode(j.at("mode").get<std::string>());
}

void to_json(json& j, const DetectorEvaluation& v) {
  j = json{{"threshold", v.threshold}, {"tpr", v.tpr},
           {"fpr", v.fpr},             {"n_normal", v.n_normal},
           {"n_abnormal", v.n_abnormal}, {"level", v.level},
           {"rank", v.rank},           {"warnings", v.warnings}};
}

void from_json(const json& j, DetectorEvaluation& v) {
  v.threshold = j.at("threshold").get<double>();
  v.tpr = j.at("tpr").get<double>();
  v.fpr = j.at("fpr").get<double>();
  v.n_normal = j.at("n_normal").get<std::size_t>();
  v.n_abnormal = j.at("n_abnormal").get<std::size_t>();
  v.level = j.at("level").get<TargetLevel>();
  v.rank = j.at("rank").get<std::size_t>();
  v.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void to_json(json& j, const BiasEstimate& v) {
  j = json{{"xi", v.xi},
           {"kind", std::string(BiasKindName(v.kind))},
           {"tpr_s", v.tpr_s},
           {"tpr_sprime", v.tpr_sprime},
           {"level", v.level}};
}

void from_json(const json& j, BiasEstimate& v) {
  v.xi = j.at("xi").get<double>();
  v.kind = ParseKind(j.at("kind").get<std::string>());
  v.tpr_s = j.at("tpr_s").get<double>();
  v.tpr_sprime = j.at("tpr_sprime").get<double>();
  v.level = j.at("level").get<TargetLevel>();
}

void to_json(json& j, const SummaryStats& v) {
  j = json{{"min", v.min}, {"q25", v.q25}, {"median", v.median},
           {"q75", v.q75}, {"max", v.max}, {"mean", v.mean},
           {"std", v.std}};
}

void from_json(const json& j, SummaryStats& v) {
  v.min = j.at("min").get<double>();
  v.q25 = j.at("q25").get<double>();
  v.median = j.at("median").get<double>();
  v.q75 = j.at("q75").get<double>();
  v.max = j.at("max").get<double>();
  v.mean = j.at("mean").get<double>();
  v.std = j.at("std").get<double>();
}

void to_json(json& j, const CellResult& v) {
  j = json{{"n", v.n}, {"alpha", v.alpha}, {"xi", v.xi}, {"fpr", v.fpr}};
}

void from_json(const json& j, CellResult& v) {
  v.n = j.at("n").get<std::size_t>();
  v.alpha = j.at("alpha").get<double>();
  v.xi = j.at("xi").get<SummaryStats>();
  v.fpr = j.at("fpr").get<SummaryStats>();
  v.xi_runs.clear();
  v.fpr_runs.clear();
}

void to_json(json& j, const QuantileSummary& v) {
  j = json{{"cells", v.cells}};
}

void from_json(const json& j, QuantileSummary& v) {
  v.cells = j.at("cells").get<std::vector<CellResult>>();
}

void to_json(json& j, const CoverageReport& v) {
  j = json{{"prescribed_n", v.prescribed_n},
           {"n_normal", v.n_normal},
           {"n_abnormal", v.n_abnormal},
           {"epsilon", v.epsilon},
           {"delta", v.delta},
           {"alpha", v.alpha},
           {"trials", v.trials},
           {"violations", v.violations},
           {"observed_violation_rate", v.observed_violation_rate},
           {"mc_slack", v.mc_slack},
           {"xi_true", v.xi_true},
           {"mean_abs_error", v.mean_abs_error},
           {"max_abs_error", v.max_abs_error}};
}

void from_json(const json& j, CoverageReport& v) {
  v.prescribed_n = j.at("prescribed_n").get<std::uint64_t>();
  v.n_normal = j.at("n_normal").get<std::size_t>();
  v.n_abnormal = j.at("n_abnormal").get<std::size_t>();
  v.epsilon = j.at("epsilon").get<double>();
  v.delta = j.at("delta").get<double>();
  v.alpha = j.at("alpha").get<double>();
  v.trials = j.at("trials").get<std::size_t>();
  v.violations = j.at("violations").get<std::size_t>();
  v.observed_violation_rate = j.at("observed_violation_rate").get<double>();
  v.mc_slack = j.at("mc_slack").get<double>();
  v.xi_true = j.at("xi_true").get<double>();
  v.mean_abs_error = j.at("mean_abs_error").get<double>();
  v.max_abs_error = j.at("max_abs_error").get<double>();
}

void to_json(json& j, const ScenarioReport& v) {
  json rows = json::array();
  for (const ScenarioRow& r : v.rows) {
    json row{{"class_tag", r.bias.class_tag},
             {"tpr_baseline", r.bias.tpr_baseline},
             {"tpr_treatment", r.bias.tpr_treatment},
             {"direction", std::string(DirectionName(r.bias.direction))},
             {"n_abnormal_baseline", r.n_abnormal_baseline},
             {"n_abnormal_treatment", r.n_abnormal_treatment}};
    row["similarity"] = r.similarity ? json(*r.similarity) : json(nullptr);
    rows.push_back(std::move(row));
  }
  j = json{{"threshold_baseline", v.threshold_baseline},
           {"threshold_treatment", v.threshold_treatment},
           {"level", v.level},
           {"rows", std::move(rows)}};
}

void from_json(const json& j, ScenarioReport& v) {
  v.threshold_baseline = j.at("threshold_baseline").get<double>();
  v.threshold_treatment = j.at("threshold_treatment").get<double>();
  v.level = j.at("level").get<TargetLevel>();
  v.rows.clear();
  for (const json& r : j.at("rows")) {
    ScenarioRow row;
    row.bias.class_tag = r.at("class_tag").get<std::string>();
    row.bias.tpr_baseline = r.at("tpr_baseline").get<double>();
    row.bias.tpr_treatment = r.at("tpr_treatment").get<double>();
    row.bias.direction = ParseDirection(r.at("direction").get<std::string>());
    row.n_abnormal_baseline = r.at("n_abnormal_baseline").get<std::size_t>();
    row.n_abnormal_treatment = r.at("n_abnormal_treatment").get<std::size_t>();
    if (!r.at("similarity").is_null()) {
      row.similarity = r.at("similarity").get<double>();
    }
    v.rows.push_back(std::move(row));
  }
}

namespace cli {

void WriteQuantileCsv(std::ostream& out, const QuantileSummary& summary) {
  out << "n,alpha,metric,min,q25,median,q75,max,mean,std\n";
  auto row = [&](const CellResult& c, const char* metric,
                 const SummaryStats& s) {
    out << c.n << ',' << FormatDouble(c.alpha) << ',' << metric;
    for (double v : {s.min, s.q25, s.median, s.q75, s.max, s.mean, s.std}) {
      out << ',' << FormatDouble(v);
    }
    out << '\n';
  };
  for (const CellResult& c : summary.cells) {
    row(c, "xi", c.xi);
    row(c, "fpr", c.fpr);
  }
}

void WriteCoverageCsv(std::ostream& out, const CoverageReport& r) {
  out << "prescribed_n,n_normal,n_abnormal,epsilon,delta,alpha,trials,"
         "violations,observed_violation_rate,mc_slack,xi_true,"
         "mean_abs_error,max_abs_error\n";
  out << r.prescribed_n << ',' << r.n_normal << ',' << r.n_abnormal << ','
      << FormatDouble(r.epsilon) << ',' << FormatDouble(r.delta) << ','
      << FormatDouble(r.alpha) << ',' << r.trials << ',' << r.violations
      << ',' << FormatDouble(r.observed_violation_rate) << ','
      << FormatDouble(r.mc_slack) << ',' << FormatDouble(r.xi_true) << ','
      << FormatDouble(r.mean_abs_error) << ','
      << FormatDouble(r.max_abs_error) << '\n';
}

void WriteScenarioCsv(std::ostream& out, const ScenarioReport& report) {
  out << "class_tag,similarity,tpr_baseline,tpr_treatment,direction,"
         "n_abnormal_baseline,n_abnormal_treatment\n";
  for (const ScenarioRow& r : report.rows) {
    out << r.bias.class_tag << ','
        << (r.similarity ? FormatDouble(*r.similarity) : std::string()) << ','
        << FormatDouble(r.bias.tpr_baseline) << ','
        << FormatDouble(r.bias.tpr_treatment) << ','
        << DirectionName(r.bias.direction) << ',' << r.n_abnormal_baseline
        << ',' << r.n_abnormal_treatment << '\n';
  }
}

void WriteScenarioTable(std::ostream& out, const ScenarioReport& report) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"class", "similarity", "tpr_baseline", "tpr_treatment",
                   "direction"});
  for (const ScenarioRow& r : report.rows) {
    cells.push_back({r.bias.class_tag,
                     r.similarity ? Sig6(*r.similarity) : std::string("-"),
                     Sig6(r.bias.tpr_baseline), Sig6(r.bias.tpr_treatment),
                     std::string(DirectionName(r.bias.direction))});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  out << "thresholds: baseline " << Sig6(report.threshold_baseline)
      << ", treatment " << Sig6(report.threshold_treatment) << " (q = "
      << Sig6(report.level.q) << ")\n";
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << "  ";
      if (c + 1 < row.size()) {
        out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      } else {
        out << row[c];
      }
    }
    out << '\n';
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) Fail(ErrorCode::kConfigError, "cannot write '" + path + "'");
  f << text;
  if (!f.flush()) Fail(ErrorCode::kConfigError, "cannot write '" + path + "'");
}

}  // namespace cli
}  // namespace scoring_bias
