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

// Empirical distribution machinery: labeled scores, the right-continuous
// empirical CDF, order statistics and the Massart (DKW) tail bound.

#ifndef SCORING_BIAS_ECDF_H_
#define SCORING_BIAS_ECDF_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace scoring_bias {

enum class Label : std::uint8_t { kNormal = 0, kAbnormal = 1 };

struct LabeledScore {
  double score = 0.0;
  Label label = Label::kNormal;
  // Test-class identity, only used by scenario reports. May be empty.
  std::string class_tag;
};

// Throws NonFiniteScore if `s.score` is NaN or infinite.
void ValidateLabeledScore(const LabeledScore& s);

// Sorted score sample. Immutable after construction.
//
// Eval(t) = #{v <= t} / n, the right-continuous convention. Ties are kept with
// multiplicity.
class EmpiricalCdf {
 public:
  // Throws EmptySample on an empty input and NonFiniteScore on NaN/inf.
  static EmpiricalCdf Build(std::span<const double> samples);
  static EmpiricalCdf Build(std::vector<double>&& samples);

  double Eval(double t) const;

  // Number of values <= t / strictly > t.
  std::size_t CountAtOrBelow(double t) const;
  std::size_t CountAbove(double t) const { return size() - CountAtOrBelow(t); }

  // 1-indexed: OrderStatistic(1) is the minimum. Throws IndexOutOfRange.
  double OrderStatistic(std::size_t k) const;

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

 private:
  explicit EmpiricalCdf(std::vector<double> sorted)
      : values_(std::move(sorted)) {}

  std::vector<double> values_;
};

struct MassartQuery {
  std::size_t n = 1;
  double lambda = 1.0;
};

// Upper bound on Pr{sqrt(n) * sup|F_hat - F| > lambda}: 2 exp(-2 lambda^2).
// Independent of n. Throws DomainError if n == 0 or lambda <= 0.
double MassartTail(const MassartQuery& q);

// The lambda at which MassartTail equals `delta`: sqrt(ln(2/delta) / 2).
double MassartLambda(double delta);

// sup_t |F_hat(t) - F(t)| for a continuous reference CDF. Exact: the supremum
// of a step function against a continuous nondecreasing F is reached at the
// left or right limit of a jump.
double SupDistance(const EmpiricalCdf& cdf,
                   const std::function<double(double)>& reference_cdf);

}  // namespace scoring_bias

#endif  // SCORING_BIAS_ECDF_H_
