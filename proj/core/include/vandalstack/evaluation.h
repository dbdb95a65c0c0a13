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

#ifndef VANDALSTACK_EVALUATION_H_
#define VANDALSTACK_EVALUATION_H_

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "vandalstack/corpus.h"
#include "vandalstack/sparse.h"

namespace vandalstack {

struct ScoredExample {
  RevisionId rev_id = 0;
  double score = 0.0;
  bool label = false;
};

// Mann-Whitney AUC from average ranks: the probability that a random
// positive outscores a random negative, ties counting one half. Throws
// Error(kSingleClass) unless both classes are present.
double auc_roc(std::span<const ScoredExample> scored);

inline constexpr std::size_t kHistogramBins = 20;
inline constexpr double kDecisionThreshold = 0.5;

struct EvalReport {
  std::optional<double> auc;  // absent for single-class input
  std::size_t n = 0;
  std::size_t positives = 0;
  std::array<std::size_t, kHistogramBins> histogram{};
  std::size_t misclassified_count = 0;  // |label - score| > 0.5
  std::size_t fp_total = 0;
  std::size_t fn_total = 0;
  // Distinct counts need feature vectors; absent when none were supplied.
  std::optional<std::size_t> fp_distinct;
  std::optional<std::size_t> fn_distinct;
};

// Histogram of |label - score| over 20 equal bins of [0, 1]; the last bin
// is closed on the right. Differences within 1e-9 below a bin edge are
// placed in the upper bin so that 1 - 0.9 lands with 0.1.
EvalReport score_diff_report(std::span<const ScoredExample> scored);

struct ErrorSets {
  std::vector<std::size_t> false_positives;  // indices into the input
  std::vector<std::size_t> false_negatives;
  std::vector<std::size_t> distinct_false_positives;  // first of each vector
  std::vector<std::size_t> distinct_false_negatives;
};

// FP: negative with score >= threshold. FN: positive with score < threshold.
// Distinct sets deduplicate by encoded feature vector equality.
ErrorSets error_sets(std::span<const ScoredExample> scored,
                     std::span<const SparseVector> vectors,
                     double threshold = kDecisionThreshold);

// AUC (when defined), histogram and error totals in one report. Distinct
// counts are filled in when vectors are supplied.
EvalReport evaluate(std::span<const ScoredExample> scored,
                    std::span<const SparseVector> vectors = {});

void write_report(std::ostream& out, const EvalReport& report);
void write_histogram(std::ostream& out, const EvalReport& report);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr std::size_t kDefaultMdsCap = 2000;

// Rows kept when n exceeds cap: evenly spaced positions of the rev_id
// ordering. Returned indices refer to the input and are ascending in rev_id.
std::vector<std::size_t> mds_subsample(std::span<const RevisionId> rev_ids,
                                       std::size_t cap = kDefaultMdsCap);

// Torgerson scaling: double-centre the squared Euclidean distances and take
// the two leading eigenpairs, coordinates = eigenvector * sqrt(max(l, 0)).
// Each axis is sign-normalized so its largest-magnitude coordinate is
// positive. The output is centred at the origin.
std::vector<Point2> classical_mds(std::span<const SparseVector> vectors);

}  // namespace vandalstack

#endif  // VANDALSTACK_EVALUATION_H_
