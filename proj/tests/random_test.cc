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

#include "scoring_bias/random.h"

#include <cmath>
#include <set>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "scoring_bias/ecdf.h"

namespace scoring_bias {
namespace {

TEST(CounterRngTest, MatchesSplitMix64Reference) {
  // First outputs of the reference SplitMix64 generator seeded with 0.
  const CounterRng rng(0);
  EXPECT_EQ(rng.Bits(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.Bits(1), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.Bits(2), 0x06C45D188009454FULL);
}

TEST(CounterRngTest, StreamKeysAreDistinct) {
  std::set<std::uint64_t> keys;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    for (std::uint64_t a = 0; a < 8; ++a) {
      for (std::uint64_t b = 0; b < 8; ++b) {
        keys.insert(StreamKey(seed, {a, b}));
      }
      keys.insert(StreamKey(seed, {a}));
    }
    keys.insert(StreamKey(seed, {}));
  }
  EXPECT_EQ(keys.size(), 4u * (64 + 8 + 1));
  EXPECT_EQ(StreamKey(1, {2, 3}), StreamKey(1, {2, 3}));
  EXPECT_NE(StreamKey(1, {2, 3}), StreamKey(1, {3, 2}));
}

TEST(CounterRngTest, FillMatchesPointDraws) {
  const CounterRng rng(StreamKey(9, {1}));
  std::vector<double> v(1000);
  rng.FillNormal(500, v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    ASSERT_EQ(v[i], rng.Normal(500 + i));
  }
}

TEST(CounterRngTest, UniformIsUniform) {
  const CounterRng rng(StreamKey(1, {}));
  const std::size_t n = 200000;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = rng.Uniform(i);
    ASSERT_GT(v[i], 0.0);
    ASSERT_LT(v[i], 1.0);
  }
  const double d = SupDistance(EmpiricalCdf::Build(std::move(v)),
                               [](double t) { return std::clamp(t, 0.0, 1.0); });
  EXPECT_LT(std::sqrt(static_cast<double>(n)) * d, MassartLambda(1e-4));
}

TEST(CounterRngTest, NormalMatchesReferenceDistribution) {
  const CounterRng rng(StreamKey(2, {}));
  const std::size_t n = 400000;
  std::vector<double> v(n);
  rng.FillNormal(0, v);
  double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  for (double x : v) {
    m1 += x;
    m2 += x * x;
    m3 += x * x * x;
    m4 += x * x * x * x;
  }
  const double nd = static_cast<double>(n);
  m1 /= nd, m2 /= nd, m3 /= nd, m4 /= nd;
  // Standard errors: 1/sqrt(n), sqrt(2/n), sqrt(15/n), sqrt(96/n).
  EXPECT_NEAR(m1, 0.0, 5 * std::sqrt(1 / nd));
  EXPECT_NEAR(m2, 1.0, 5 * std::sqrt(2 / nd));
  EXPECT_NEAR(m3, 0.0, 5 * std::sqrt(15 / nd));
  EXPECT_NEAR(m4, 3.0, 5 * std::sqrt(96 / nd));

  const boost::math::normal_distribution<double> z;
  const double d = SupDistance(EmpiricalCdf::Build(std::move(v)),
                               [&](double t) { return boost::math::cdf(z, t); });
  EXPECT_LT(std::sqrt(nd) * d, MassartLambda(1e-4));
}

TEST(CounterRngTest, NormalTailFrequency) {
  // The region past the base strip edge comes from a separate sampler.
  const CounterRng rng(StreamKey(3, {}));
  const std::size_t n = 2000000;
  const double edge = 3.442619855899;
  std::size_t beyond = 0;
  std::size_t far = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::abs(rng.Normal(i));
    beyond += x > edge;
    far += x > 4.0;
  }
  const boost::math::normal_distribution<double> z;
  auto check = [&](std::size_t count, double cut) {
    const double p = 2 * boost::math::cdf(boost::math::complement(z, cut));
    const double mean = p * static_cast<double>(n);
    EXPECT_NEAR(static_cast<double>(count), mean, 5 * std::sqrt(mean));
  };
  check(beyond, edge);
  check(far, 4.0);
}

}  // namespace
}  // namespace scoring_bias
