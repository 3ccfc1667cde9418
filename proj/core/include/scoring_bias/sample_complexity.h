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

// Finite-sample guarantee for the empirical relative scoring bias. With
// probability at least 1 - delta, |xi_hat - xi| <= epsilon once the mixture
// validation set has
//
//   n >= (8 / eps^2) * ( ln(2 / (1 - sqrt(1 - delta))) * ((2 - alpha)/alpha)^2
//                      + ln(2 / delta) / (1 - alpha)
//                        * ((l_a / l_0inv)^2 + (l'_a / l'_0inv)^2) )
//
// where l_a, l'_a bound the slopes of the abnormal-score CDFs and l_0inv,
// l'_0inv the slopes of the normal-score quantile functions. All logarithms
// are natural.

#ifndef SCORING_BIAS_SAMPLE_COMPLEXITY_H_
#define SCORING_BIAS_SAMPLE_COMPLEXITY_H_

#include <cstdint>

#include "scoring_bias/bias.h"

namespace scoring_bias {

struct ComplexityInput {
  double epsilon = 0.1;
  double delta = 0.1;
  double alpha = 0.2;
  double lip_a = 1.0;
  double lip_a_prime = 1.0;
  double lip_0_inv = 1.0;
  double lip_0_inv_prime = 1.0;
};

// Throws DomainError. `check_epsilon` is false for the inverse problem.
void ValidateComplexityInput(const ComplexityInput& c,
                             bool check_epsilon = true);

// The bracketed, epsilon-free part of the bound.
double BoundBracket(const ComplexityInput& c);

// Unrounded right-hand side (8 / eps^2) * BoundBracket(c).
double RequiredSamplesBound(const ComplexityInput& c);

// Ceiling of RequiredSamplesBound. Throws TooLarge above 2^63 - 1.
std::uint64_t RequiredSamples(const ComplexityInput& c);

struct AchievableEpsilon {
  double epsilon = 0.0;
  // |xi| <= 1 always, so an epsilon >= 1 says nothing.
  bool vacuous = false;
};

// Smallest epsilon certified by n samples: sqrt((8 / n) * BoundBracket(c)).
// c.epsilon is ignored.
AchievableEpsilon AchievableEpsilonFor(std::uint64_t n,
                                       const ComplexityInput& c);

// Samples needed for |F_hat_a - F_a| <= epsilon1 w.p. 1 - delta when only an
// alpha fraction of the mixture is abnormal:
//   ceil( ln(2 / (1 - sqrt(1 - delta))) * ((2 - alpha)/alpha)^2
//         / (2 eps1^2) )
std::uint64_t AbnormalCdfSamples(double epsilon1, double delta, double alpha);

// Analytic Lipschitz constants for a Gaussian score model. The abnormal CDF
// slope is bounded by the peak density 1 / (sigma_a sqrt(2 pi)). The normal
// quantile function is unbounded in slope, so it is restricted to quantile
// levels in [q_lo, q_hi] where its slope is at most sigma_0 / phi(z*), z*
// being the endpoint farther from the median.
struct LipschitzConstants {
  double lip_a = 0.0;
  double lip_0_inv = 0.0;
};

inline constexpr double kDefaultQuantileLo = 0.5;
inline constexpr double kDefaultQuantileHi = 0.999;

LipschitzConstants GaussianLipschitz(const GaussianScoreModel& m,
                                     double q_lo = kDefaultQuantileLo,
                                     double q_hi = kDefaultQuantileHi);

ComplexityInput GaussianComplexityInput(double epsilon, double delta,
                                        double alpha,
                                        const GaussianScoreModel& m,
                                        const GaussianScoreModel& m_prime,
                                        double q_lo = kDefaultQuantileLo,
                                        double q_hi = kDefaultQuantileHi);

}  // namespace scoring_bias

#endif  // SCORING_BIAS_SAMPLE_COMPLEXITY_H_
