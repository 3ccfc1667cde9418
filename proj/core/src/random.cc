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

#include <array>
#include <cmath>

namespace scoring_bias {
namespace {

constexpr int kLayers = 128;
// Right edge of the base strip and the common area of every layer.
constexpr double kTailStart = 3.442619855899;
constexpr double kLayerArea = 9.91256303526217e-3;

double Density(double x) { return std::exp(-0.5 * x * x); }

// Layer i is the rectangle [0, x[i]] x [f[i], f[i + 1]]. Layer 0 stands for
// the base strip plus the tail beyond kTailStart.
struct ZigguratTables {
  std::array<double, kLayers + 1> x{};
  std::array<double, kLayers + 1> f{};

  ZigguratTables() {
    x[0] = kLayerArea / Density(kTailStart);
    x[1] = kTailStart;
    for (int i = 1; i < kLayers - 1; ++i) {
      x[i + 1] = std::sqrt(-2.0 * std::log(Density(x[i]) + kLayerArea / x[i]));
    }
    x[kLayers] = 0.0;
    f[0] = 0.0;
    for (int i = 1; i <= kLayers; ++i) f[i] = Density(x[i]);
  }
};

// Built during static initialization; no draw happens before main().
const ZigguratTables kTables;

const ZigguratTables& Tables() { return kTables; }

double ToUnit(std::uint64_t bits) {
  return (static_cast<double>(static_cast<std::int64_t>(bits >> 11)) + 0.5) *
         0x1.0p-53;
}

// Rejection path; `word` is the first 64-bit word of this draw.
double ZigguratSlow(std::uint64_t word, int layer, double x) {
  const ZigguratTables& t = Tables();
  std::uint64_t k = 1;
  auto next_unit = [&] { return ToUnit(Mix64(word + (k++) * kGoldenGamma)); };
  for (;;) {
    if (layer == 0) {
      // Marsaglia's exponential tail sampler.
      for (;;) {
        const double tx = -std::log(next_unit()) / kTailStart;
        const double ty = -std::log(next_unit());
        if (2.0 * ty >= tx * tx) return kTailStart + tx;
      }
    }
    const double y = t.f[layer] + next_unit() * (t.f[layer + 1] - t.f[layer]);
    if (y < Density(x)) return x;
    // Start over with a fresh (layer, x) pair.
    const std::uint64_t w = Mix64(word + (k++) * kGoldenGamma);
    layer = static_cast<int>(w & (kLayers - 1));
    x = ToUnit(w) * t.x[layer];
    if (x < t.x[layer + 1]) return x;
  }
}

double ZigguratNormal(std::uint64_t word) {
  const ZigguratTables& t = Tables();
  const int layer = static_cast<int>(word & (kLayers - 1));
  const bool negative = (word >> 7) & 1;
  // The top 53 bits do not overlap the layer and sign bits.
  double x = ToUnit(word) * t.x[layer];
  if (!(x < t.x[layer + 1])) x = ZigguratSlow(word, layer, x);
  return negative ? -x : x;
}

}  // namespace

std::uint64_t StreamKey(std::uint64_t master_seed,
                        std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = Mix64(master_seed ^ 0x5C0E1B1A5ULL);
  for (std::uint64_t id : path) {
    h = Mix64(h + kGoldenGamma + Mix64(id + 0x632BE59BD9B4E019ULL));
  }
  return h;
}

double CounterRng::Normal(std::uint64_t index) const {
  return ZigguratNormal(Bits(index));
}

void CounterRng::FillNormal(std::uint64_t first, std::span<double> out) const {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ZigguratNormal(Bits(first + i));
  }
}

}  // namespace scoring_bias
