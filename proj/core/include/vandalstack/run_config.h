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

#ifndef VANDALSTACK_RUN_CONFIG_H_
#define VANDALSTACK_RUN_CONFIG_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "vandalstack/corpus.h"
#include "vandalstack/sampling.h"
#include "vandalstack/stacking.h"

namespace vandalstack {

// Settings of a full training run. Text form is "key = value" per line with
// '#' comments; keys are grouped by prefix:
//
//   seed = 42
//   paths.corpus = train.tsv          paths.truth = truth.tsv
//   paths.schema = schema.txt         paths.pipeline = pipeline.vsp
//   paths.output = scores.tsv
//   corpus.malformed = skip | abort
//   sampling.fraction = 1/50          sampling.window = all | <count>
//   sampling.seed = <n>               (default: derived from seed)
//   sampling.dedup = true             sampling.dedup_order = after | before
//   selection.threshold = 1e-5        selection.seed = 0
//   stack.k = 3                       stack.refit_full = false
//   stack.first_stage = <spec>; <spec>; ...
//   stack.second_stage = <spec>; ...
//
// where <spec> is "family [preset=optimized] [key=value ...]".
struct RunConfig {
  struct Paths {
    std::string corpus;
    std::string truth;
    std::string schema;
    std::string pipeline;
    std::string output;
  } paths;
  MalformedPolicy malformed = MalformedPolicy::kSkip;
  SamplingConfig sampling;
  bool sampling_seed_explicit = false;
  double selection_threshold = 1e-5;
  std::uint64_t selection_seed = 0;
  StackConfig stack = StackConfig::standard();
  std::uint64_t master_seed = 0;

  // Applies one key; throws Error(kInvalidArgument) for unknown keys.
  void set(std::string_view key, std::string_view value);

  // Relative paths are resolved against base_dir when it is non-empty.
  static RunConfig parse(std::istream& in, const std::string& base_dir = "");
  static RunConfig load_file(const std::string& path);

  // Propagates the master seed into sampling and stacking.
  void finalize();

  void write(std::ostream& out) const;
};

}  // namespace vandalstack

#endif  // VANDALSTACK_RUN_CONFIG_H_
