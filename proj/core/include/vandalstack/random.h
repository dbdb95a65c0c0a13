/*
 * Copyright 2026 The vandalstack Authors.
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

#ifndef VANDALSTACK_RANDOM_H_
#define VANDALSTACK_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>

namespace vandalstack {

// SplitMix64 step: advances the state and returns the mixed output.
std::uint64_t splitmix64_next(std::uint64_t& state);

// xoshiro256** seeded through SplitMix64. Satisfies
// UniformRandomBitGenerator, but the helpers below are used instead of the
// <random> distributions because those are implementation-defined and the
// project promises identical draws on every standard library.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via the Box-Muller transform (no cached second value).
  double normal();

 private:
  std::uint64_t s_[4];
};

// Seed derivation used for every random decision in the pipeline:
//   derive_seed(master, tag, index) =
//     splitmix64(master ^ fnv1a64(tag) ^ splitmix64(index))
// so that one master seed reproduces sampling, folds and all model seeds.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t index = 0);

template <typename T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace vandalstack

#endif  // VANDALSTACK_RANDOM_H_
