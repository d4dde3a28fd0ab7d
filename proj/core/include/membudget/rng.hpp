/*
 * Copyright 2026 The membudget Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <limits>

namespace membudget {

/// SplitMix64 finalizer. Used for seed expansion and for hashing
/// coordinates into independent sub-seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Order-sensitive combination of a seed with extra words, e.g.
/// derive_seed(master, cell, seed_index). Pure function, platform independent.
constexpr std::uint64_t derive_seed(std::uint64_t seed) noexcept { return splitmix64(seed); }

template <typename... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t word, Rest... rest) noexcept {
  return derive_seed(splitmix64(seed) ^ splitmix64(word + 0x632BE59BD9B4E019ULL), rest...);
}

/// Deterministic pseudo-random source.
///
/// Engine: xoshiro256** (Blackman and Vigna, 2018) with its 256-bit state
/// filled from four successive SplitMix64 outputs of the seed. All derived
/// draws (integers, reals, Bernoulli) are implemented here with fixed
/// arithmetic, so a seed reproduces the same sequence on every platform,
/// unlike the implementation-defined std distributions.
///
/// Satisfies UniformRandomBitGenerator so it can drive std::shuffle.
class SeededRng {
 public:
  using result_type = std::uint64_t;

  explicit SeededRng(std::uint64_t seed = 0) noexcept;

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  /// Number of 64-bit words drawn since construction.
  [[nodiscard]] std::uint64_t draws() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;
  result_type operator()() noexcept { return next_u64(); }

  /// Uniform integer in [0, bound). bound must be > 0. Uses Lemire's
  /// multiply-and-reject method, so the result is unbiased.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01() noexcept;

  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) noexcept { return uniform01() < p; }

  /// Independent child stream; does not disturb this stream beyond one draw.
  SeededRng fork() noexcept { return SeededRng(splitmix64(next_u64())); }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_{0};
  std::uint64_t s_[4];
};

}  // namespace membudget
