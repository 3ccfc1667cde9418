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

#include "scoring_bias/ecdf.h"

#include <algorithm>
#include <cmath>

#include "scoring_bias/error.h"

namespace scoring_bias {

void ValidateLabeledScore(const LabeledScore& s) {
  if (!std::isfinite(s.score)) {
    Fail(ErrorCode::kNonFiniteScore, "score is not finite");
  }
  if (s.label != Label::kNormal && s.label != Label::kAbnormal) {
    Fail(ErrorCode::kDomainError, "label must be normal (0) or abnormal (1)");
  }
}

EmpiricalCdf EmpiricalCdf::Build(std::span<const double> samples) {
  return Build(std::vector<double>(samples.begin(), samples.end()));
}

EmpiricalCdf EmpiricalCdf::Build(std::vector<double>&& samples) {
  if (samples.empty()) {
    Fail(ErrorCode::kEmptySample, "cannot build an empirical CDF from nothing");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) {
      Fail(ErrorCode::kNonFiniteScore, "sample contains NaN or infinity");
    }
  }
  std::sort(samples.begin(), samples.end());
  return EmpiricalCdf(std::move(samples));
}

std::size_t EmpiricalCdf::CountAtOrBelow(double t) const {
  return static_cast<std::size_t>(
      std::upper_bound(values_.begin(), values_.end(), t) - values_.begin());
}

double EmpiricalCdf::Eval(double t) const {
  return static_cast<double>(CountAtOrBelow(t)) /
         static_cast<double>(values_.size());
}

double EmpiricalCdf::OrderStatistic(std::size_t k) const {
  if (k < 1 || k > values_.size()) {
    Fail(ErrorCode::kIndexOutOfRange,
         "order statistic " + std::to_string(k) + " outside [1, " +
             std::to_string(values_.size()) + "]");
  }
  return values_[k - 1];
}

double MassartTail(const MassartQuery& q) {
  if (q.n < 1) Fail(ErrorCode::kDomainError, "Massart query needs n >= 1");
  if (!(q.lambda > 0.0)) {
    Fail(ErrorCode::kDomainError, "Massart query needs lambda > 0");
  }
  return 2.0 * std::exp(-2.0 * q.lambda * q.lambda);
}

double MassartLambda(double delta) {
  if (!(delta > 0.0 && delta < 2.0)) {
    Fail(ErrorCode::kDomainError, "delta must lie in (0, 2)");
  }
  return std::sqrt(std::log(2.0 / delta) / 2.0);
}

double SupDistance(const EmpiricalCdf& cdf,
                   const std::function<double(double)>& reference_cdf) {
  const auto values = cdf.values();
  const double n = static_cast<double>(values.size());
  double sup = 0.0;
  std::size_t i = 0;
  while (i < values.size()) {
    // Skip over a run of ties so the jump is evaluated once.
    std::size_t j = i;
    while (j + 1 < values.size() && values[j + 1] == values[i]) ++j;
    const double f = reference_cdf(values[i]);
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j + 1) / n;
    sup = std::max({sup, std::abs(at - f), std::abs(f - below)});
    i = j + 1;
  }
  return sup;
}

}  // namespace scoring_bias
