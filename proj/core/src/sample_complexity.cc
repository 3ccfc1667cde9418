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

#include "scoring_bias/sample_complexity.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "scoring_bias/error.h"
#include "scoring_bias/normal.h"

namespace scoring_bias {
namespace {

// 2^63 as a double; every finite value strictly below it fits in int64.
constexpr double kSaturation = 9223372036854775808.0;

void RequirePositive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    Fail(ErrorCode::kDomainError, std::string(name) + " must be positive");
  }
}

void RequireUnitOpen(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    Fail(ErrorCode::kDomainError, std::string(name) + " must lie in (0, 1)");
  }
}

// ln(2 / (1 - sqrt(1 - delta))) * ((2 - alpha) / alpha)^2.
double AbnormalTerm(double delta, double alpha) {
  // 1 - sqrt(1 - d) == d / (1 + sqrt(1 - d)) without cancellation for tiny d.
  const double denom = delta / (1.0 + std::sqrt(1.0 - delta));
  const double ratio = (2.0 - alpha) / alpha;
  return std::log(2.0 / denom) * ratio * ratio;
}

std::uint64_t CeilOrTooLarge(double rhs) {
  if (!(rhs < kSaturation)) {
    std::ostringstream msg;
    msg << "required sample count " << rhs << " exceeds 2^63 - 1";
    Fail(ErrorCode::kTooLarge, msg.str());
  }
  return static_cast<std::uint64_t>(std::ceil(rhs));
}

}  // namespace

void ValidateComplexityInput(const ComplexityInput& c, bool check_epsilon) {
  if (check_epsilon) RequirePositive(c.epsilon, "epsilon");
  RequireUnitOpen(c.delta, "delta");
  RequireUnitOpen(c.alpha, "alpha");
  RequirePositive(c.lip_a, "lip_a");
  RequirePositive(c.lip_a_prime, "lip_a_prime");
  RequirePositive(c.lip_0_inv, "lip_0_inv");
  RequirePositive(c.lip_0_inv_prime, "lip_0_inv_prime");
}

double BoundBracket(const ComplexityInput& c) {
  ValidateComplexityInput(c, /*check_epsilon=*/false);
  const double r = c.lip_a / c.lip_0_inv;
  const double r_prime = c.lip_a_prime / c.lip_0_inv_prime;
  return AbnormalTerm(c.delta, c.alpha) +
         std::log(2.0 / c.delta) / (1.0 - c.alpha) * (r * r + r_prime * r_prime);
}

double RequiredSamplesBound(const ComplexityInput& c) {
  ValidateComplexityInput(c);
  return 8.0 / (c.epsilon * c.epsilon) * BoundBracket(c);
}

std::uint64_t RequiredSamples(const ComplexityInput& c) {
  return CeilOrTooLarge(RequiredSamplesBound(c));
}

AchievableEpsilon AchievableEpsilonFor(std::uint64_t n,
                                       const ComplexityInput& c) {
  if (n < 1) Fail(ErrorCode::kDomainError, "n must be at least 1");
  AchievableEpsilon out;
  out.epsilon = std::sqrt(8.0 / static_cast<double>(n) * BoundBracket(c));
  out.vacuous = out.epsilon >= 1.0;
  return out;
}

std::uint64_t AbnormalCdfSamples(double epsilon1, double delta, double alpha) {
  RequirePositive(epsilon1, "epsilon1");
  RequireUnitOpen(delta, "delta");
  RequireUnitOpen(alpha, "alpha");
  return CeilOrTooLarge(AbnormalTerm(delta, alpha) /
                        (2.0 * epsilon1 * epsilon1));
}

LipschitzConstants GaussianLipschitz(const GaussianScoreModel& m, double q_lo,
                                     double q_hi) {
  ValidateModel(m);
  if (!(q_lo > 0.0 && q_lo < q_hi && q_hi < 1.0)) {
    Fail(ErrorCode::kDomainError,
         "quantile restriction needs 0 < q_lo < q_hi < 1");
  }
  const double z = std::max(std::abs(StdNormalQuantile(q_lo)),
                            std::abs(StdNormalQuantile(q_hi)));
  LipschitzConstants out;
  out.lip_a = 1.0 / (m.sigmaa * std::sqrt(2.0 * std::numbers::pi));
  out.lip_0_inv = m.sigma0 / StdNormalPdf(z);
  return out;
}

ComplexityInput GaussianComplexityInput(double epsilon, double delta,
                                        double alpha,
                                        const GaussianScoreModel& m,
                                        const GaussianScoreModel& m_prime,
                                        double q_lo, double q_hi) {
  const LipschitzConstants l = GaussianLipschitz(m, q_lo, q_hi);
  const LipschitzConstants lp = GaussianLipschitz(m_prime, q_lo, q_hi);
  ComplexityInput c;
  c.epsilon = epsilon;
  c.delta = delta;
  c.alpha = alpha;
  c.lip_a = l.lip_a;
  c.lip_a_prime = lp.lip_a;
  c.lip_0_inv = l.lip_0_inv;
  c.lip_0_inv_prime = lp.lip_0_inv;
  ValidateComplexityInput(c);
  return c;
}

}  // namespace scoring_bias
