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

#ifndef VANDALSTACK_SAMPLING_H_
#define VANDALSTACK_SAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vandalstack/corpus.h"

namespace vandalstack {

// A positive rational in (0, 1].
class Fraction {
 public:
  Fraction(std::uint64_t numerator, std::uint64_t denominator);

  // Accepts "a/b", an integer, or a plain decimal such as "0.02" (converted
  // exactly to a power-of-ten denominator).
  static Fraction parse(std::string_view text);

  std::uint64_t numerator() const { return numerator_; }
  std::uint64_t denominator() const { return denominator_; }

  // round(fraction * count), halves rounded up, computed in integers.
  std::size_t scale_rounded(std::size_t count) const;

  std::string to_string() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;

 private:
  std::uint64_t numerator_;
  std::uint64_t denominator_;
};

enum class DedupOrder { kAfter, kBefore };

struct SamplingConfig {
  Fraction fraction{1, 50};
  // Number of most recent (highest rev_id) negatives eligible for sampling;
  // nullopt means all of them.
  std::optional<std::size_t> window;
  std::uint64_t seed = 0;
  bool dedup = true;
  DedupOrder dedup_order = DedupOrder::kAfter;
};

// Keeps every positive and round(fraction * |eligible|) negatives drawn
// uniformly without replacement from the eligible window. Output is sorted by
// rev_id.
std::vector<LabeledExample> undersample(const std::vector<LabeledExample>& examples,
                                        const SamplingConfig& cfg);

// Keeps one example per content key (comment, registered flag, geo fields,
// user_tag): the one with the smallest rev_id. Survivors keep their relative
// order.
std::vector<LabeledExample> dedup(const std::vector<LabeledExample>& examples);

// undersample + dedup in the configured order.
std::vector<LabeledExample> prepare_training_set(
    const std::vector<LabeledExample>& examples, const SamplingConfig& cfg);

}  // namespace vandalstack

#endif  // VANDALSTACK_SAMPLING_H_
