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

#ifndef SCORING_BIAS_NORMAL_H_
#define SCORING_BIAS_NORMAL_H_

namespace scoring_bias {

double StdNormalPdf(double x);

// Phi(x), via erfc so the lower tail keeps full relative precision.
double StdNormalCdf(double x);

// Phi^{-1}(p) for p in (0, 1). Wichura's AS 241 (PPND16), accurate to about
// 1e-16 relative. Throws DomainError outside (0, 1).
double StdNormalQuantile(double p);

}  // namespace scoring_bias

#endif  // SCORING_BIAS_NORMAL_H_
