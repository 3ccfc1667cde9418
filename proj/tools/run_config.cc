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

#include "run_config.h"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "scoring_bias/error.h"

namespace scoring_bias::cli {
namespace {

using nlohmann::json;

// Reads fields of one JSON object and rejects whatever was not read.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      Fail(ErrorCode::kConfigError, Where() + " must be an object");
    }
  }

  template <typename T>
  void Read(const char* key, T& out) {
    const json* v = Find(key);
    if (v == nullptr) return;
    out = Convert<T>(*v, key);
  }

  bool Has(const char* key) const { return j_.contains(key); }

  const json* Find(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string Child(const char* key) const { return path_ + "." + key; }

  void Finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.contains(it.key())) {
        Fail(ErrorCode::kConfigError,
             "unknown key '" + Child(it.key().c_str()) + "'");
      }
    }
  }

 private:
  std::string Where() const { return "'" + path_ + "'"; }

  template <typename T>
  T Convert(const json& v, const char* key) const {
    const std::string where = "'" + Child(key) + "'";
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) Fail(ErrorCode::kConfigError, where + " must be a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) Fail(ErrorCode::kConfigError, where + " must be a string");
      return v.get<std::string>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) Fail(ErrorCode::kConfigError, where + " must be a number");
      return v.get<T>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_unsigned()) {
        Fail(ErrorCode::kConfigError,
             where + " must be a non-negative integer");
      }
      const auto u = v.get<std::uint64_t>();
      if (u > std::numeric_limits<T>::max()) {
        Fail(ErrorCode::kConfigError, where + " is out of range");
      }
      return static_cast<T>(u);
    } else {
      static_assert(sizeof(T) == 0, "unsupported config field type");
    }
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void ReadModel(const json& j, const std::string& path, GaussianScoreModel& m) {
  Section s(j, path);
  s.Read("mu0", m.mu0);
  s.Read("sigma0", m.sigma0);
  s.Read("mua", m.mua);
  s.Read("sigmaa", m.sigmaa);
  s.Finish();
  try {
    ValidateModel(m);
  } catch (const Error& e) {
    Fail(ErrorCode::kConfigError, "'" + path + "': " + e.what());
  }
}

void ReadGaussianPair(Section& parent, GaussianPairSection& out) {
  const json* g = parent.Find("gaussian");
  if (g == nullptr) return;
  Section s(*g, parent.Child("gaussian"));
  if (const json* m = s.Find("s")) ReadModel(*m, s.Child("s"), out.s);
  if (const json* m = s.Find("sprime")) {
    ReadModel(*m, s.Child("sprime"), out.s_prime);
  }
  s.Finish();
}

template <typename T>
std::vector<T> ReadArray(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) {
    Fail(ErrorCode::kConfigError, "'" + path + "' must be a non-empty array");
  }
  std::vector<T> out;
  for (const json& e : v) {
    if constexpr (std::is_floating_point_v<T>) {
      if (!e.is_number()) {
        Fail(ErrorCode::kConfigError, "'" + path + "' must hold numbers");
      }
      out.push_back(e.get<T>());
    } else {
      if (!e.is_number_unsigned()) {
        Fail(ErrorCode::kConfigError,
             "'" + path + "' must hold non-negative integers");
      }
      out.push_back(static_cast<T>(e.get<std::uint64_t>()));
    }
  }
  return out;
}

void ReadSynthetic(const json& j, SyntheticConfig& cfg) {
  Section s(j, "synthetic");
  s.Read("dim", cfg.dim);
  s.Read("anomaly_mean", cfg.anomaly_mean);
  s.Read("anomaly_std", cfg.anomaly_std);
  s.Read("p_three_dims", cfg.p_three_dims);
  std::string reading;
  s.Read("spread_reading", reading);
  if (reading == "std") {
    cfg.spread_reading = SpreadReading::kStdDev;
  } else if (reading == "variance") {
    cfg.spread_reading = SpreadReading::kVariance;
  } else if (!reading.empty()) {
    Fail(ErrorCode::kConfigError,
         "'synthetic.spread_reading' must be \"std\" or \"variance\"");
  }
  s.Finish();
}

void ReadTraining(const json& j, TrainingSetup& t) {
  Section s(j, "training");
  s.Read("train_normal", t.train_normal);
  s.Read("train_abnormal", t.train_abnormal);
  s.Read("lambda_c", t.lambda_c);
  s.Finish();
  if (t.train_normal == 0 || t.train_abnormal == 0) {
    Fail(ErrorCode::kConfigError, "training set sizes must be positive");
  }
}

void ReadSynth(const json& j, SynthSection& out) {
  Section s(j, "synth");
  s.Read("n", out.n);
  s.Read("alpha", out.alpha);
  s.Read("points_csv", out.points_csv);
  s.Read("scores_s_csv", out.scores_s_csv);
  s.Read("scores_sprime_csv", out.scores_sprime_csv);
  s.Read("summary_json", out.summary_json);
  s.Finish();
  if (out.n == 0) Fail(ErrorCode::kConfigError, "'synth.n' must be positive");
}

void ReadConverge(const json& j, ConvergeSection& out) {
  Section s(j, "converge");
  ConvergenceGrid& g = out.grid;
  if (const json* v = s.Find("n_values")) {
    g.n_values = ReadArray<std::size_t>(*v, s.Child("n_values"));
  }
  if (const json* v = s.Find("alpha_values")) {
    g.alpha_values = ReadArray<double>(*v, s.Child("alpha_values"));
  }
  s.Read("runs", g.runs);
  s.Read("q", g.level.q);
  s.Read("test_normal", g.test_normal);
  s.Read("workers", g.workers);

  std::string split;
  s.Read("class_split", split);
  if (split == "binomial") {
    g.split = ClassSplit::kBinomial;
  } else if (split == "deterministic") {
    g.split = ClassSplit::kDeterministic;
  } else if (!split.empty()) {
    Fail(ErrorCode::kConfigError,
         "'converge.class_split' must be \"deterministic\" or \"binomial\"");
  }

  std::string test_set;
  s.Read("test_set", test_set);
  if (test_set == "fixed") {
    g.test_set = TestSetMode::kFixed;
  } else if (test_set == "per_run") {
    g.test_set = TestSetMode::kPerRun;
  } else if (!test_set.empty()) {
    Fail(ErrorCode::kConfigError,
         "'converge.test_set' must be \"per_run\" or \"fixed\"");
  }

  std::string scorers;
  s.Read("scorers", scorers);
  if (scorers == "gaussian") {
    out.scorers = ScorerSource::kGaussian;
  } else if (scorers == "stand_in") {
    out.scorers = ScorerSource::kStandIn;
  } else if (!scorers.empty()) {
    Fail(ErrorCode::kConfigError,
         "'converge.scorers' must be \"stand_in\" or \"gaussian\"");
  }
  ReadGaussianPair(s, out.gaussian);
  s.Read("output_csv", out.output_csv);
  s.Read("output_json", out.output_json);
  s.Finish();
}

void ReadCoverage(const json& j, CoverageSection& out) {
  Section s(j, "coverage");
  s.Read("epsilon", out.epsilon);
  s.Read("delta", out.delta);
  s.Read("alpha", out.alpha);
  s.Read("trials", out.trials);
  s.Read("q", out.q);
  s.Read("max_draws", out.max_draws);
  s.Read("workers", out.workers);
  if (const json* v = s.Find("quantile_interval")) {
    const auto range = ReadArray<double>(*v, s.Child("quantile_interval"));
    if (range.size() != 2) {
      Fail(ErrorCode::kConfigError,
           "'coverage.quantile_interval' must be [lo, hi]");
    }
    out.quantile_lo = range[0];
    out.quantile_hi = range[1];
  }
  ReadGaussianPair(s, out.gaussian);
  s.Read("output_csv", out.output_csv);
  s.Read("output_json", out.output_json);
  s.Finish();
}

}  // namespace

RunConfig ParseRunConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kConfigError, std::string("invalid JSON: ") + e.what());
  }

  RunConfig cfg;
  Section top(root, "config");
  top.Read("seed", cfg.seed);
  if (const json* v = top.Find("synthetic")) ReadSynthetic(*v, cfg.synthetic);
  if (const json* v = top.Find("training")) ReadTraining(*v, cfg.training);
  if (const json* v = top.Find("synth")) ReadSynth(*v, cfg.synth);
  if (const json* v = top.Find("converge")) ReadConverge(*v, cfg.converge);
  if (const json* v = top.Find("coverage")) ReadCoverage(*v, cfg.coverage);
  top.Finish();

  cfg.synthetic.seed = cfg.seed;
  cfg.synthetic.alpha = cfg.synth.alpha;
  try {
    ValidateConfig(cfg.synthetic);
    ValidateGrid(cfg.converge.grid);
  } catch (const Error& e) {
    Fail(ErrorCode::kConfigError, e.what());
  }
  return cfg;
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kConfigError, "cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ParseRunConfig(text.str());
}

std::uint64_t ResolveSeed(const RunConfig& config,
                          std::optional<std::uint64_t> flag_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env) {
    const std::string_view text(env);
    std::uint64_t seed = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail(ErrorCode::kConfigError,
           std::string(kSeedEnvVar) + " is not an unsigned integer: '" +
               std::string(text) + "'");
    }
    return seed;
  }
  return config.seed;
}

}  // namespace scoring_bias::cli
