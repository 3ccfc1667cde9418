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

#include "cli.h"

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "report_io.h"
#include "run_config.h"
#include "scoring_bias/bias.h"
#include "scoring_bias/detector.h"
#include "scoring_bias/harness.h"
#include "scoring_bias/sample_complexity.h"
#include "scoring_bias/scenario.h"
#include "scoring_bias/score_file.h"
#include "scoring_bias/synthetic.h"

namespace scoring_bias::cli {
namespace {

using nlohmann::json;

struct LevelFlags {
  double q = kDefaultQ;
  std::string mode = "fix_fpr";
  std::string rule = "constraint";

  TargetLevel Level() const {
    return {q, mode == "fix_tpr" ? LevelMode::kFixTpr : LevelMode::kFixFpr};
  }
  DetectorOptions Options() const {
    return {rule == "literal_max" ? ThresholdRule::kLiteralMax
                                  : ThresholdRule::kConstraintSatisfying};
  }
};

void AddLevelFlags(CLI::App* cmd, LevelFlags& f, bool with_mode) {
  cmd->add_option("--q", f.q, "quantile level (target TPR in fix_tpr mode)")
      ->capture_default_str();
  if (with_mode) {
    cmd->add_option("--mode", f.mode, "fix_fpr or fix_tpr")
        ->check(CLI::IsMember({"fix_fpr", "fix_tpr"}))
        ->capture_default_str();
    cmd->add_option("--rule", f.rule, "threshold rank rule")
        ->check(CLI::IsMember({"constraint", "literal_max"}))
        ->capture_default_str();
  }
}

struct SeedFlag {
  std::uint64_t value = 0;
  CLI::Option* opt = nullptr;

  std::optional<std::uint64_t> Get() const {
    if (opt != nullptr && opt->count() > 0) return value;
    return std::nullopt;
  }
};

void Emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// --- evaluate / bias ---------------------------------------------------

int CmdEvaluate(const std::string& path, const LevelFlags& f,
                std::ostream& out, std::ostream& err) {
  const ScoreFile file = ReadScoreFile(path);
  const std::vector<LabeledScore> scores = file.Scores();
  const DetectorEvaluation ev =
      EvaluateDetector(scores, f.Level(), f.Options());
  for (const std::string& w : ev.warnings) err << "warning: " << w << '\n';
  Emit(out, json(ev));
  return kExitOk;
}

int CmdBias(const std::string& path_s, const std::string& path_sprime,
            const LevelFlags& f, std::ostream& out, std::ostream& err) {
  const std::vector<LabeledScore> s = ReadScoreFile(path_s).Scores();
  const std::vector<LabeledScore> sp = ReadScoreFile(path_sprime).Scores();
  // Surface threshold warnings from either scorer.
  for (const auto* scores : {&s, &sp}) {
    const DetectorEvaluation ev =
        EvaluateDetector(*scores, f.Level(), f.Options());
    for (const std::string& w : ev.warnings) err << "warning: " << w << '\n';
  }
  Emit(out, json(EmpiricalRelativeBias(s, sp, f.Level(), f.Options())));
  return kExitOk;
}

int CmdGaussianBias(const GaussianScoreModel& m, const GaussianScoreModel& mp,
                    double q, std::ostream& out) {
  Emit(out, json(GaussianRelativeBias(m, mp, q)));
  return kExitOk;
}

// --- complexity ----------------------------------------------------------

json ComplexityJson(const ComplexityInput& c) {
  return json{{"epsilon", c.epsilon},       {"delta", c.delta},
              {"alpha", c.alpha},           {"lip_a", c.lip_a},
              {"lip_a_prime", c.lip_a_prime}, {"lip_0_inv", c.lip_0_inv},
              {"lip_0_inv_prime", c.lip_0_inv_prime}};
}

int CmdComplexity(ComplexityInput c, bool invert, std::uint64_t n,
                  std::ostream& out) {
  if (invert) {
    const AchievableEpsilon a = AchievableEpsilonFor(n, c);
    json j = ComplexityJson(c);
    j.erase("epsilon");
    Emit(out, json{{"n", n},
                   {"epsilon", a.epsilon},
                   {"vacuous", a.vacuous},
                   {"input", j}});
    return kExitOk;
  }
  const std::uint64_t required = RequiredSamples(c);
  Emit(out, json{{"n", required},
                 {"bound", RequiredSamplesBound(c)},
                 {"input", ComplexityJson(c)}});
  return kExitOk;
}

// --- synth ---------------------------------------------------------------

void WritePointsCsv(const std::string& path,
                    const std::vector<DataPoint>& points, std::size_t dim) {
  std::ostringstream os;
  for (std::size_t d = 0; d < dim; ++d) os << 'x' << d << ',';
  os << "label\n";
  for (const DataPoint& p : points) {
    for (double v : p.features) os << FormatDouble(v) << ',';
    os << (p.label == Label::kAbnormal ? 1 : 0) << '\n';
  }
  WriteTextFile(path, os.str());
}

void WriteScores(const std::string& path, const StandInScorer& scorer,
                 const std::vector<DataPoint>& points) {
  ScoreFile file;
  file.rows.reserve(points.size());
  for (const DataPoint& p : points) {
    ScoreRecord r;
    r.score.score = scorer.Score(p.features);
    r.score.label = p.label;
    file.rows.push_back(std::move(r));
  }
  std::ostringstream os;
  WriteScoreFile(os, file);
  WriteTextFile(path, os.str());
}

int CmdSynth(RunConfig cfg, std::optional<std::uint64_t> seed_flag,
             std::ostream& out) {
  const std::uint64_t seed = ResolveSeed(cfg, seed_flag);
  cfg.synthetic.seed = seed;
  const SynthSection& s = cfg.synth;
  const std::vector<DataPoint> points = SampleDataset(cfg.synthetic, s.n);
  const auto n_abnormal = static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const DataPoint& p) {
        return p.label == Label::kAbnormal;
      }));
  WritePointsCsv(s.points_csv, points, cfg.synthetic.dim);

  if (!s.scores_s_csv.empty() || !s.scores_sprime_csv.empty()) {
    const FeatureScorerPair pair =
        TrainStandInPair(cfg.synthetic, seed, cfg.training);
    if (!s.scores_s_csv.empty()) WriteScores(s.scores_s_csv, pair.s(), points);
    if (!s.scores_sprime_csv.empty()) {
      WriteScores(s.scores_sprime_csv, pair.s_prime(), points);
    }
  }

  const json summary{{"seed", seed},
                     {"n", s.n},
                     {"n_normal", s.n - n_abnormal},
                     {"n_abnormal", n_abnormal},
                     {"dim", cfg.synthetic.dim},
                     {"alpha", cfg.synthetic.alpha},
                     {"points_csv", s.points_csv},
                     {"scores_s_csv", s.scores_s_csv},
                     {"scores_sprime_csv", s.scores_sprime_csv}};
  if (!s.summary_json.empty()) {
    WriteTextFile(s.summary_json, summary.dump(2) + "\n");
  }
  Emit(out, summary);
  return kExitOk;
}

// --- converge ------------------------------------------------------------

std::unique_ptr<ScorePairSource> MakeSource(const RunConfig& cfg,
                                            std::uint64_t seed) {
  if (cfg.converge.scorers == ScorerSource::kGaussian) {
    return std::make_unique<GaussianScorerPair>(cfg.converge.gaussian.s,
                                                cfg.converge.gaussian.s_prime);
  }
  SyntheticConfig synthetic = cfg.synthetic;
  synthetic.seed = seed;
  return std::make_unique<FeatureScorerPair>(
      TrainStandInPair(synthetic, seed, cfg.training));
}

int CmdConverge(RunConfig cfg, std::optional<std::uint64_t> seed_flag,
                std::optional<unsigned> workers,
                std::optional<std::size_t> runs, std::ostream& out) {
  const std::uint64_t seed = ResolveSeed(cfg, seed_flag);
  ConvergenceGrid grid = cfg.converge.grid;
  grid.master_seed = seed;
  if (workers) grid.workers = *workers;
  if (runs) grid.runs = *runs;
  ValidateGrid(grid);

  const std::unique_ptr<ScorePairSource> source = MakeSource(cfg, seed);
  const QuantileSummary summary = RunConvergence(grid, *source);

  std::ostringstream csv;
  WriteQuantileCsv(csv, summary);
  if (!cfg.converge.output_csv.empty()) {
    WriteTextFile(cfg.converge.output_csv, csv.str());
  }
  // Worker count is left out on purpose: the output does not depend on it.
  const json doc{
      {"seed", seed},
      {"runs", grid.runs},
      {"q", grid.level.q},
      {"test_normal", grid.test_normal},
      {"class_split",
       grid.split == ClassSplit::kBinomial ? "binomial" : "deterministic"},
      {"test_set", grid.test_set == TestSetMode::kFixed ? "fixed" : "per_run"},
      {"scorers", cfg.converge.scorers == ScorerSource::kGaussian
                      ? "gaussian"
                      : "stand_in"},
      {"summary", summary}};
  if (!cfg.converge.output_json.empty()) {
    WriteTextFile(cfg.converge.output_json, doc.dump(2) + "\n");
  }
  out << csv.str();
  return kExitOk;
}

// --- coverage ------------------------------------------------------------

int CmdCoverage(RunConfig cfg, std::optional<std::uint64_t> seed_flag,
                std::optional<unsigned> workers,
                std::optional<std::size_t> trials, std::ostream& out) {
  const CoverageSection& s = cfg.coverage;
  CoverageOptions options;
  options.seed = ResolveSeed(cfg, seed_flag);
  options.trials = trials ? *trials : s.trials;
  options.max_draws = s.max_draws;
  options.workers = workers ? *workers : s.workers;
  options.level.q = s.q;
  const ComplexityInput c =
      GaussianComplexityInput(s.epsilon, s.delta, s.alpha, s.gaussian.s,
                              s.gaussian.s_prime, s.quantile_lo, s.quantile_hi);
  const CoverageReport report =
      RunCoverage(c, s.gaussian.s, s.gaussian.s_prime, options);

  if (!s.output_csv.empty()) {
    std::ostringstream csv;
    WriteCoverageCsv(csv, report);
    WriteTextFile(s.output_csv, csv.str());
  }
  const json doc{{"seed", options.seed},
                 {"input", ComplexityJson(c)},
                 {"report", report}};
  if (!s.output_json.empty()) {
    WriteTextFile(s.output_json, doc.dump(2) + "\n");
  }
  Emit(out, doc);
  return kExitOk;
}

// --- scenario ------------------------------------------------------------

int CmdScenario(const std::string& baseline, const std::string& treatment,
                double q, const std::string& csv_path,
                const std::string& json_path, std::ostream& out) {
  const ScenarioReport report =
      RunScenarioReport(ReadScoreFile(baseline), ReadScoreFile(treatment),
                        TargetLevel{q, LevelMode::kFixFpr});
  if (!csv_path.empty()) {
    std::ostringstream csv;
    WriteScenarioCsv(csv, report);
    WriteTextFile(csv_path, csv.str());
  }
  if (!json_path.empty()) {
    WriteTextFile(json_path, json(report).dump(2) + "\n");
  }
  WriteScenarioTable(out, report);
  return kExitOk;
}

RunConfig ConfigOrDefault(const std::string& path) {
  return path.empty() ? ParseRunConfig("{}") : LoadRunConfig(path);
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingClass:
    case ErrorCode::kClassMismatch:
      return kExitClass;
    case ErrorCode::kTooLarge:
      return kExitTooLarge;
    default:
      return kExitInput;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Relative scoring bias of anomaly detectors", "scoring-bias"};
  app.require_subcommand(1);

  // evaluate
  std::string eval_path;
  LevelFlags eval_level;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "threshold one scorer and report TPR/FPR");
  evaluate->add_option("scores", eval_path, "score CSV")->required();
  AddLevelFlags(evaluate, eval_level, true);

  // bias
  std::string bias_s;
  std::string bias_sp;
  LevelFlags bias_level;
  CLI::App* bias = app.add_subcommand(
      "bias", "empirical relative scoring bias between two score files");
  bias->add_option("s", bias_s, "score CSV of the baseline scorer")
      ->required();
  bias->add_option("sprime", bias_sp, "score CSV of the compared scorer")
      ->required();
  AddLevelFlags(bias, bias_level, true);

  // gaussian-bias
  GaussianScoreModel gm{0.0, 1.0, 0.0, 1.0};
  GaussianScoreModel gmp{0.0, 1.0, 3.0, 1.0};
  double gq = kDefaultQ;
  CLI::App* gbias = app.add_subcommand(
      "gaussian-bias", "closed-form bias between two Gaussian score models");
  gbias->add_option("--mu0", gm.mu0)->capture_default_str();
  gbias->add_option("--sigma0", gm.sigma0)->capture_default_str();
  gbias->add_option("--mua", gm.mua)->capture_default_str();
  gbias->add_option("--sigmaa", gm.sigmaa)->capture_default_str();
  gbias->add_option("--mu0p", gmp.mu0)->capture_default_str();
  gbias->add_option("--sigma0p", gmp.sigma0)->capture_default_str();
  gbias->add_option("--muap", gmp.mua)->capture_default_str();
  gbias->add_option("--sigmaap", gmp.sigmaa)->capture_default_str();
  gbias->add_option("--q", gq)->capture_default_str();

  // complexity
  ComplexityInput ci;
  bool invert = false;
  std::uint64_t invert_n = 0;
  CLI::App* complexity = app.add_subcommand(
      "complexity", "samples needed for an (epsilon, delta) guarantee");
  complexity->add_option("--epsilon", ci.epsilon)->capture_default_str();
  complexity->add_option("--delta", ci.delta)->capture_default_str();
  complexity->add_option("--alpha", ci.alpha)->capture_default_str();
  complexity->add_option("--lip-a", ci.lip_a)->capture_default_str();
  complexity->add_option("--lip-a-prime", ci.lip_a_prime)
      ->capture_default_str();
  complexity->add_option("--lip-0-inv", ci.lip_0_inv)->capture_default_str();
  complexity->add_option("--lip-0-inv-prime", ci.lip_0_inv_prime)
      ->capture_default_str();
  CLI::Option* invert_flag = complexity->add_flag(
      "--invert", invert, "report the epsilon certified by --n samples");
  CLI::Option* n_opt = complexity->add_option("--n", invert_n, "sample size");
  invert_flag->needs(n_opt);
  n_opt->needs(invert_flag);

  // Commands driven by a run config.
  std::string config_path;
  unsigned workers_value = 1;
  std::size_t count_value = 0;
  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run config JSON")
        ->check(CLI::ExistingFile);
  };

  CLI::App* synth = app.add_subcommand(
      "synth", "sample the synthetic mixture and optional stand-in scores");
  add_config(synth);
  SeedFlag synth_seed;
  synth_seed.opt = synth->add_option("--seed", synth_seed.value);
  std::string synth_points;
  std::size_t synth_n = 0;
  CLI::Option* synth_n_opt = synth->add_option("--n", synth_n, "points");
  synth->add_option("--points-csv", synth_points);

  CLI::App* converge = app.add_subcommand(
      "converge", "quantile summaries of xi_hat and FPR over an (n, alpha) grid");
  add_config(converge);
  SeedFlag conv_seed;
  conv_seed.opt = converge->add_option("--seed", conv_seed.value);
  CLI::Option* conv_workers =
      converge->add_option("--workers", workers_value)
          ->check(CLI::Range(1u, 1024u));
  CLI::Option* conv_runs =
      converge->add_option("--runs", count_value)->check(CLI::PositiveNumber);
  std::string conv_csv;
  std::string conv_json;
  CLI::Option* conv_csv_opt = converge->add_option("--output-csv", conv_csv);
  CLI::Option* conv_json_opt =
      converge->add_option("--output-json", conv_json);

  CLI::App* coverage = app.add_subcommand(
      "coverage", "empirical coverage of the finite-sample guarantee");
  add_config(coverage);
  SeedFlag cov_seed;
  cov_seed.opt = coverage->add_option("--seed", cov_seed.value);
  CLI::Option* cov_workers =
      coverage->add_option("--workers", workers_value)
          ->check(CLI::Range(1u, 1024u));
  CLI::Option* cov_trials = coverage->add_option("--trials", count_value);
  std::string cov_csv;
  std::string cov_json;
  CLI::Option* cov_csv_opt = coverage->add_option("--output-csv", cov_csv);
  CLI::Option* cov_json_opt = coverage->add_option("--output-json", cov_json);

  // scenario
  std::string sc_base;
  std::string sc_treat;
  double sc_q = kDefaultQ;
  std::string sc_csv;
  std::string sc_json;
  CLI::App* scenario = app.add_subcommand(
      "scenario", "per-class direction of bias between two scorers");
  scenario->add_option("baseline", sc_base)->required();
  scenario->add_option("treatment", sc_treat)->required();
  scenario->add_option("--q", sc_q)->capture_default_str();
  scenario->add_option("--csv", sc_csv);
  scenario->add_option("--json", sc_json);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInput;
  }

  auto optional_count = [&](CLI::Option* o) -> std::optional<std::size_t> {
    if (o->count() > 0) return count_value;
    return std::nullopt;
  };
  auto optional_workers = [&](CLI::Option* o) -> std::optional<unsigned> {
    if (o->count() > 0) return workers_value;
    return std::nullopt;
  };

  try {
    if (evaluate->parsed()) return CmdEvaluate(eval_path, eval_level, out, err);
    if (bias->parsed()) return CmdBias(bias_s, bias_sp, bias_level, out, err);
    if (gbias->parsed()) return CmdGaussianBias(gm, gmp, gq, out);
    if (complexity->parsed()) {
      return CmdComplexity(ci, invert, invert_n, out);
    }
    if (synth->parsed()) {
      RunConfig cfg = ConfigOrDefault(config_path);
      if (synth_n_opt->count() > 0) cfg.synth.n = synth_n;
      if (!synth_points.empty()) cfg.synth.points_csv = synth_points;
      return CmdSynth(std::move(cfg), synth_seed.Get(), out);
    }
    if (converge->parsed()) {
      RunConfig cfg = ConfigOrDefault(config_path);
      if (conv_csv_opt->count() > 0) cfg.converge.output_csv = conv_csv;
      if (conv_json_opt->count() > 0) cfg.converge.output_json = conv_json;
      return CmdConverge(std::move(cfg), conv_seed.Get(),
                         optional_workers(conv_workers),
                         optional_count(conv_runs), out);
    }
    if (coverage->parsed()) {
      RunConfig cfg = ConfigOrDefault(config_path);
      if (cov_csv_opt->count() > 0) cfg.coverage.output_csv = cov_csv;
      if (cov_json_opt->count() > 0) cfg.coverage.output_json = cov_json;
      return CmdCoverage(std::move(cfg), cov_seed.Get(),
                         optional_workers(cov_workers),
                         optional_count(cov_trials), out);
    }
    if (scenario->parsed()) {
      return CmdScenario(sc_base, sc_treat, sc_q, sc_csv, sc_json, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace scoring_bias::cli
