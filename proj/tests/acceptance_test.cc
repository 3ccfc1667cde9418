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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails. Takes several minutes on one core.
//
//   acceptance_test            run every criterion
//   acceptance_test 3 6        run criteria 3 and 6 only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "json.hpp"
#include "report_io.h"
#include "scoring_bias/bias.h"
#include "scoring_bias/detector.h"
#include "scoring_bias/harness.h"
#include "scoring_bias/sample_complexity.h"

namespace scoring_bias {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path WorkDir() {
  const fs::path dir = fs::temp_directory_path() / "scoring_bias_acceptance";
  fs::create_directories(dir);
  return dir;
}

// Runs `scoring-bias converge` with the default config and returns the
// summary from its JSON output.
QuantileSummary ConvergeViaCli(const std::vector<std::string>& extra,
                               const std::string& tag) {
  const fs::path dir = WorkDir();
  std::vector<std::string> args = {
      "converge", "--output-csv", (dir / (tag + ".csv")).string(),
      "--output-json", (dir / (tag + ".json")).string()};
  args.insert(args.end(), extra.begin(), extra.end());
  std::ostringstream out, err;
  const int rc = cli::RunCli(args, out, err);
  if (rc != 0) throw std::runtime_error("converge failed: " + err.str());
  return json::parse(Slurp(dir / (tag + ".json")))["summary"]
      .get<QuantileSummary>();
}

Outcome FprMeansWithin(const QuantileSummary& s, double tol,
                       std::string& detail) {
  bool ok = true;
  for (const CellResult& c : s.cells) {
    if (c.n != 10000) continue;
    ok = ok && std::abs(c.fpr.mean - 0.05) <= tol;
    detail += Fmt(" a=%.2f:%.4f", c.alpha, c.fpr.mean);
  }
  return {ok, detail};
}

// 1. Mean test FPR at n = 10000 within 0.05 +- 0.01 for every alpha, and
//    FPR IQR at n = 100 at least 3x the IQR at n = 10000. Default grid,
//    stand-in scorers, 1500 runs; then a 300-run smoke grid at +- 0.015.
Outcome FprConvergence() {
  const QuantileSummary full = ConvergeViaCli({"--seed", "0"}, "c1_full");
  std::string detail = "1500 runs, mean FPR(n=1e4):";
  Outcome means = FprMeansWithin(full, 0.01, detail);
  bool iqr_ok = true;
  detail += "; IQR ratio n=100/n=1e4:";
  for (double alpha : {0.01, 0.05, 0.1, 0.2}) {
    const SummaryStats& lo = full.Cell(100, alpha).fpr;
    const SummaryStats& hi = full.Cell(10000, alpha).fpr;
    const double ratio = (lo.q75 - lo.q25) / (hi.q75 - hi.q25);
    iqr_ok = iqr_ok && ratio >= 3.0;
    detail += Fmt(" %.1f", ratio);
  }
  const QuantileSummary smoke =
      ConvergeViaCli({"--seed", "1", "--runs", "300"}, "c1_smoke");
  std::string smoke_detail = "; 300-run smoke:";
  Outcome smoke_means = FprMeansWithin(smoke, 0.015, smoke_detail);
  return {means.pass && iqr_ok && smoke_means.pass, detail + smoke_detail};
}

// 2. std(xi_hat) at (1e4, 0.2) at least 30% below (1e4, 0.01), averaged over
//    five master seeds.
Outcome VarianceReduction() {
  double sum_lo = 0.0, sum_hi = 0.0;
  std::string detail;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    ConvergenceGrid g;
    g.n_values = {10000};
    g.alpha_values = {0.01, 0.2};
    g.master_seed = 100 + seed;
    SyntheticConfig cfg;
    cfg.seed = g.master_seed;
    const FeatureScorerPair pair = TrainStandInPair(cfg, g.master_seed);
    const QuantileSummary s = RunConvergence(g, pair);
    sum_lo += s.Cell(10000, 0.01).xi.std;
    sum_hi += s.Cell(10000, 0.2).xi.std;
    detail += Fmt(" [%.4f %.4f]", s.Cell(10000, 0.01).xi.std,
                  s.Cell(10000, 0.2).xi.std);
  }
  const double reduction = 1.0 - sum_hi / sum_lo;
  return {reduction >= 0.30,
          Fmt("mean std a=0.01: %.4f, a=0.2: %.4f, reduction %.1f%% (need >= 30%%);",
              sum_lo / 5, sum_hi / 5, 100 * reduction) +
              " per seed" + detail};
}

// 3. |xi_hat - xi| < 0.005 with 1e6 samples per class in >= 95 of 100
//    trials for the reference Gaussian pair at q = 0.95.
Outcome Consistency() {
  const GaussianScoreModel m{0, 1, 0, 1}, mp{0, 1, 3, 1};
  const double xi = GaussianRelativeBias(m, mp, 0.95).xi;
  const GaussianScorerPair pair(m, mp);
  int close = 0;
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    PairedScores s = pair.Draw(StreamKey(2024, {t}), 1000000, 1000000);
    const double xi_hat =
        EmpiricalRelativeBias(EmpiricalCdf::Build(std::move(s.normal_s)),
                              EmpiricalCdf::Build(std::move(s.abnormal_s)),
                              EmpiricalCdf::Build(std::move(s.normal_sprime)),
                              EmpiricalCdf::Build(std::move(s.abnormal_sprime)),
                              TargetLevel{0.95})
            .xi;
    close += std::abs(xi_hat - xi) < 0.005;
    worst = std::max(worst, std::abs(xi_hat - xi));
  }
  return {close >= 95, Fmt("xi = %.6f, %g/100 trials within 0.005, max error %.5f",
                           xi, close, worst)};
}

// 4. Violation rate of |xi_hat - xi| > eps at the prescribed n is at most
//    delta + 3 sqrt(delta (1 - delta) / trials) over 500 trials.
Outcome Coverage() {
  const GaussianScoreModel m{0, 1, 0, 1}, mp{0, 1, 3, 1};
  const ComplexityInput c = GaussianComplexityInput(0.1, 0.1, 0.2, m, mp);
  CoverageOptions opt;
  opt.trials = 500;
  opt.seed = 4;
  const CoverageReport r = RunCoverage(c, m, mp, opt);
  const double limit = r.delta + r.mc_slack;
  return {r.observed_violation_rate <= limit,
          Fmt("n = %.0f, violation rate %.4f (limit %.4f), max |error| %.4f",
              static_cast<double>(r.prescribed_n), r.observed_violation_rate,
              limit, r.max_abs_error)};
}

// 5. Slope of log std(xi_hat) against log n in [-0.65, -0.35].
Outcome Rate() {
  RateCheckOptions opt;
  opt.n_values = {100, 1000, 10000, 100000};
  opt.runs = 500;
  opt.seed = 5;
  const RateCheckResult r =
      RunRateCheck(GaussianScorerPair({0, 1, 0, 1}, {0, 1, 3, 1}), opt);
  std::string detail = Fmt("slope %.4f; std:", r.slope);
  for (const RatePoint& p : r.points) detail += Fmt(" %.5f", p.std_xi);
  return {r.defined && r.slope >= -0.65 && r.slope <= -0.35, detail};
}

// Smallest sample value tau with #{v <= tau} >= k.
double ScanRank(const std::vector<double>& v, long long k) {
  double best = std::numeric_limits<double>::infinity();
  for (double tau : v) {
    long long count = 0;
    for (double x : v) count += x <= tau;
    if (count >= k) best = std::min(best, tau);
  }
  return best;
}

double ScanAbove(const std::vector<double>& v, double tau) {
  long long above = 0;
  for (double x : v) above += x > tau;
  return static_cast<double>(above) / static_cast<double>(v.size());
}

// 6. Detector thresholds equal a brute-force threshold scan, and xi_hat
//    equals direct recomputation, on 1000 random small instances.
Outcome OracleEquivalence() {
  std::mt19937_64 gen(6);
  std::uniform_int_distribution<int> size(1, 200), level(1, 999), grid(0, 60),
      coin(0, 1);
  int mismatches = 0;
  double worst_xi = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    struct Scorer {
      std::vector<double> normal, abnormal;
      std::vector<LabeledScore> labeled;
    } sc[2];
    const bool ties = coin(gen) == 1;
    std::normal_distribution<double> z;
    for (Scorer& s : sc) {
      s.normal.resize(static_cast<std::size_t>(size(gen)));
      s.abnormal.resize(static_cast<std::size_t>(size(gen)));
      for (double& v : s.normal) v = ties ? 0.25 * grid(gen) : z(gen);
      for (double& v : s.abnormal) v = ties ? 0.25 * grid(gen) + 2 : z(gen) + 1;
      for (double v : s.normal) s.labeled.push_back({v, Label::kNormal, ""});
      for (double v : s.abnormal) s.labeled.push_back({v, Label::kAbnormal, ""});
      std::shuffle(s.labeled.begin(), s.labeled.end(), gen);
    }
    const int a = level(gen);
    const bool fix_tpr = trial % 4 == 3;
    const TargetLevel lvl{a / 1000.0,
                          fix_tpr ? LevelMode::kFixTpr : LevelMode::kFixFpr};
    double tpr[2];
    for (int i = 0; i < 2; ++i) {
      const Scorer& s = sc[i];
      // Rank from exact integer arithmetic on q = a / 1000.
      long long k;
      double tau;
      if (fix_tpr) {
        const long long n1 = static_cast<long long>(s.abnormal.size());
        k = std::max(1LL, (1000 - a) * n1 / 1000);
        tau = ScanRank(s.abnormal, k);
      } else {
        const long long n0 = static_cast<long long>(s.normal.size());
        k = (a * n0 + 999) / 1000;
        tau = ScanRank(s.normal, k);
      }
      const DetectorEvaluation ev = EvaluateDetector(s.labeled, lvl);
      tpr[i] = ScanAbove(s.abnormal, tau);
      if (ev.threshold != tau || ev.tpr != tpr[i] ||
          ev.fpr != ScanAbove(s.normal, tau)) {
        ++mismatches;
      }
    }
    const double xi = EmpiricalRelativeBias(sc[0].labeled, sc[1].labeled, lvl).xi;
    worst_xi = std::max(worst_xi, std::abs(xi - (tpr[1] - tpr[0])));
  }
  return {mismatches == 0 && worst_xi <= 1e-12,
          Fmt("%g detector mismatches in 2000 evaluations, max |xi diff| %.2e",
              mismatches, worst_xi)};
}

// 7. Identical config and seed give byte-identical converge CSVs, including
//    across worker counts.
Outcome Reproduction() {
  const fs::path dir = WorkDir();
  const std::string cfg = (dir / "c7.json").string();
  std::ofstream(cfg) << json{{"seed", 7}, {"converge", {{"runs", 100}}}}.dump();
  std::vector<std::string> csvs;
  for (const char* workers : {"1", "4", "1"}) {
    const std::string out = (dir / (std::string("c7_") + workers + ".csv")).string();
    std::ostringstream o, e;
    const int rc = cli::RunCli({"converge", "--config", cfg, "--workers", workers,
                                "--output-csv", out, "--output-json",
                                (dir / "c7.json.out").string()},
                               o, e);
    if (rc != 0) return {false, "converge failed: " + e.str()};
    csvs.push_back(Slurp(out));
  }
  const bool same = csvs[0] == csvs[1] && csvs[1] == csvs[2] && !csvs[0].empty();
  return {same, Fmt("default grid, 100 runs, workers 1/4/1: %.0f-byte CSVs ",
                    static_cast<double>(csvs[0].size())) +
                    (same ? "identical" : "differ")};
}

// 8. The packaged shirt/boot scenario fixture reports upward then downward.
Outcome Scenario() {
  const fs::path dir = WorkDir();
  const std::string csv = (dir / "c8.csv").string();
  std::ostringstream out, err;
  const std::string fx = SCORING_BIAS_FIXTURE_DIR;
  const int rc = cli::RunCli({"scenario", fx + "/scenario_baseline.csv",
                              fx + "/scenario_treatment.csv", "--q", "0.95",
                              "--csv", csv},
                             out, err);
  if (rc != 0) return {false, "scenario failed: " + err.str()};
  std::istringstream lines(Slurp(csv));
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  const bool ok = first.rfind("shirt,", 0) == 0 &&
                  first.find(",0.09,0.71,upward,") != std::string::npos &&
                  second.rfind("boot,", 0) == 0 &&
                  second.find(",0.92,0.29,downward,") != std::string::npos;
  return {ok, "rows: " + first + " | " + second};
}

}  // namespace
}  // namespace scoring_bias

int main(int argc, char** argv) {
  using scoring_bias::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"FPR convergence", scoring_bias::FprConvergence},
      {"variance reduction in xi_hat", scoring_bias::VarianceReduction},
      {"consistency with the Gaussian closed form", scoring_bias::Consistency},
      {"finite-sample coverage", scoring_bias::Coverage},
      {"convergence rate", scoring_bias::Rate},
      {"brute-force oracle equivalence", scoring_bias::OracleEquivalence},
      {"deterministic reproduction", scoring_bias::Reproduction},
      {"scenario fixture directions", scoring_bias::Scenario},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.contains(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL",
                id, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
