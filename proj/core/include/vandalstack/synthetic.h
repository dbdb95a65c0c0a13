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

#ifndef VANDALSTACK_SYNTHETIC_H_
#define VANDALSTACK_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vandalstack/corpus.h"
#include "vandalstack/featurize.h"
#include "vandalstack/learners/dataset.h"

namespace vandalstack {

// Feature-level benchmark: 10 numeric columns x0..x9 and 5 categorical
// columns c0..c4 one-hot encoded after them.
//   x0..x9 ~ U(0, 1)
//   latent = 3 * [x0 > 0.5 xor x1 > 0.5] + 2 * x2 * x3 + 0.5 * x4 + N(0, 0.3)
// The top positive_rate share of latent is positive. x5..x9 and all
// categorical columns are independent of the label.
struct SyntheticTable {
  FeatureSchema schema;
  Dataset data;
  std::vector<RevisionId> ids;
  // Schema columns that belong to the pure-noise categorical features.
  std::vector<std::size_t> noise_categorical_columns;
};

SyntheticTable make_synthetic_table(std::size_t n, double positive_rate,
                                    std::uint64_t seed);

// Corpus-level benchmark in the merged-line format with a separate truth
// map. Vandal edits lean towards anonymous users, free-text or shouting
// comments and a few countries; regular edits are mostly structured claim
// edits. Around 3% of rows repeat earlier content.
struct SyntheticCorpus {
  std::vector<Revision> revisions;
  LabelMap labels;
};

SyntheticCorpus make_synthetic_corpus(std::size_t n, double positive_rate,
                                      std::uint64_t seed);

}  // namespace vandalstack

#endif  // VANDALSTACK_SYNTHETIC_H_
