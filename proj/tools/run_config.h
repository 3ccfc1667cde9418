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

// Run configuration: one JSON document with a section per command.
//
//   {
//     "seed": 0,
//     "synthetic": {"dim": 9, "anomaly_mean": 1.6, "anomaly_std": 0.8,
//                   "spread_reading": "std", "p_three_dims": 0.4},
//     "training":  {"train_normal": 10000, "train_abnormal": 1000,
//                   "lambda_c": 0.5},
//     "synth":     {"n": 1000, "alpha": 0.1, ...},
//     "converge":  {"n_values": [100, 1000, 10000], ...},
//     "coverage":  {"epsilon": 0.1, "delta": 0.1, "alpha": 0.2, ...}
//   }
//
// Every key is optional and unknown keys are rejected. The seed may be
// overridden by the SCORING_BIAS_SEED environment variable.

#ifndef SCORING_BIAS_TOOLS_RUN_CONFIG_H_
#define SCORING_BIAS_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>

#include "scoring_bias/bias.h"
#include "scoring_bias/harness.h"
#include "scoring_bias/synthetic.h"

namespace scoring_bias::cli {

inline constexpr char kSeedEnvVar[] = "SCORING_BIAS_SEED";

struct SynthSection {
  std::size_t n = 1000;
  double alpha = 0.1;
  std::string points_csv = "synth_points.csv";
  // Score files for the two stand-in scorers on the same points; empty skips.
  std::string scores_s_csv;
  std::string scores_sprime_csv;
  std::string summary_json = "synth_summary.json";
};

enum class ScorerSource { kStandIn, kGaussian };

struct GaussianPairSection {
  GaussianScoreModel s{0.0, 1.0, 0.0, 1.0};
  GaussianScoreModel s_prime{0.0, 1.0, 3.0, 1.0};
};

struct ConvergeSection {
  ConvergenceGrid grid;
  ScorerSource scorers = ScorerSource::kStandIn;
  GaussianPairSection gaussian;
  std::string output_csv = "converge.csv";
  std::string output_json = "converge.json";
};

struct CoverageSection {
  double epsilon = 0.1;
  double delta = 0.1;
  double alpha = 0.2;
  std::size_t trials = 500;
  double q = 0.95;
  double max_draws = 1e9;
  unsigned workers = 1;
  double quantile_lo = kDefaultQuantileLo;
  double quantile_hi = kDefaultQuantileHi;
  GaussianPairSection gaussian;
  std::string output_csv = "coverage.csv";
  std::string output_json = "coverage.json";
};

struct RunConfig {
  std::uint64_t seed = 0;
  SyntheticConfig synthetic;
  TrainingSetup training;
  SynthSection synth;
  ConvergeSection converge;
  CoverageSection coverage;
};

// Throws Error(kConfigError) on malformed JSON, type mismatches, unknown keys
// and out-of-range values.
RunConfig ParseRunConfig(const std::string& json_text);
RunConfig LoadRunConfig(const std::string& path);

// Seed precedence: explicit flag, then SCORING_BIAS_SEED, then the config.
std::uint64_t ResolveSeed(const RunConfig& config,
                          std::optional<std::uint64_t> flag_seed);

}  // namespace scoring_bias::cli

#endif  // SCORING_BIAS_TOOLS_RUN_CONFIG_H_
