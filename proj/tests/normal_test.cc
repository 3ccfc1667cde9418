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

#include "scoring_bias/normal.h"

#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "test_util.h"

namespace scoring_bias {
namespace {

using testing::CodeOf;
using Big = boost::multiprecision::cpp_bin_float_50;

// 50-digit reference values.
Big BigCdf(double x) {
  return boost::multiprecision::erfc(-Big(x) / boost::multiprecision::sqrt(Big(2))) / 2;
}

TEST(NormalTest, CdfAgainstHighPrecision) {
  for (double x = -37.0; x <= 8.5; x += 0.0625) {
    const double want = static_cast<double>(BigCdf(x));
    const double got = StdNormalCdf(x);
    // exp(-x^2/2) amplifies the rounding of x^2 by a factor of about x^2.
    EXPECT_NEAR(got, want, 4e-16 * (1 + x * x) * std::max(want, 1e-300)) << "x=" << x;
  }
}

TEST(NormalTest, PdfAgainstBoost) {
  const boost::math::normal_distribution<double> z;
  for (double x = -10.0; x <= 10.0; x += 0.125) {
    EXPECT_NEAR(StdNormalPdf(x), boost::math::pdf(z, x),
                1e-15 * boost::math::pdf(z, x) + 1e-300);
  }
}

TEST(NormalTest, QuantileAgainstBoost) {
  const boost::math::normal_distribution<double> z;
  for (double p : {1e-300, 1e-100, 1e-20, 1e-10, 1e-5, 0.001, 0.01, 0.025,
                   0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.975, 0.99, 0.999,
                   1 - 1e-10}) {
    const double want = boost::math::quantile(z, p);
    EXPECT_NEAR(StdNormalQuantile(p), want, 1e-14 * std::max(1.0, std::abs(want)))
        << "p=" << p;
  }
  EXPECT_NEAR(StdNormalQuantile(0.95), 1.6448536269514722, 1e-15);
  EXPECT_DOUBLE_EQ(StdNormalQuantile(0.5), 0.0);
}

TEST(NormalTest, QuantileInvertsCdf) {
  for (double p = 0.0005; p < 1.0; p += 0.0005) {
    EXPECT_NEAR(StdNormalCdf(StdNormalQuantile(p)), p, 2e-15);
  }
}

TEST(NormalTest, QuantileDomain) {
  for (double p : {0.0, 1.0, -0.1, 2.0, std::nan("")}) {
    EXPECT_EQ(CodeOf([p] { StdNormalQuantile(p); }), ErrorCode::kDomainError);
  }
}

}  // namespace
}  // namespace scoring_bias
