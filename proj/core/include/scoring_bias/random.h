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

// Counter-based random numbers. Every draw is a pure function of
// (stream key, draw index), so any partition of the index space across
// workers reproduces the same values.
//
// Uniforms are the SplitMix64 output at position `index` of the sequence
// seeded by the stream key. Normal number `index` is produced by a 128-layer
// ziggurat (Marsaglia & Tsang) fed by the 64-bit word at the same position;
// the rare rejections continue on a hash chain seeded by that word. Uniform
// and normal draws at the same index are therefore not independent, so
// callers give them disjoint index ranges.

#ifndef SCORING_BIAS_RANDOM_H_
#define SCORING_BIAS_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <span>

namespace scoring_bias {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 / Stafford variant 13 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives a stream key from a master seed and a path of identifiers, e.g.
// (master_seed, {cell, run, role}). Distinct paths give unrelated streams.
std::uint64_t StreamKey(std::uint64_t master_seed,
                        std::initializer_list<std::uint64_t> path);

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }

  std::uint64_t Bits(std::uint64_t index) const {
    return Mix64(key_ + (index + 1) * kGoldenGamma);
  }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double Uniform(std::uint64_t index) const {
    // The signed conversion is a single instruction; the value fits in 53 bits.
    return (static_cast<double>(static_cast<std::int64_t>(Bits(index) >> 11)) +
            0.5) *
           0x1.0p-53;
  }

  // Standard normal number `index` of this stream.
  double Normal(std::uint64_t index) const;

  // out[i] = Normal(first + i).
  void FillNormal(std::uint64_t first, std::span<double> out) const;

 private:
  std::uint64_t key_;
};

}  // namespace scoring_bias

#endif  // SCORING_BIAS_RANDOM_H_
