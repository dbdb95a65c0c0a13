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

#ifndef VANDALSTACK_LEARNERS_TREE_H_
#define VANDALSTACK_LEARNERS_TREE_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "vandalstack/learners/dataset.h"
#include "vandalstack/random.h"
#include "vandalstack/sparse.h"

namespace vandalstack {

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // go left when x[feature] <= threshold
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;
  double gain = 0.0;    // weighted impurity decrease of this split
  double weight = 0.0;  // training weight that reached the node

  bool is_leaf() const { return feature < 0; }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes);

  std::span<const TreeNode> nodes() const { return nodes_; }
  std::size_t leaf_index(const SparseVector& x) const;
  double predict(const SparseVector& x) const { return nodes_[leaf_index(x)].value; }

  // Adds each split's gain to importances[feature].
  void accumulate_importances(std::span<double> importances) const;

  void write(std::ostream& out) const;
  static DecisionTree read(std::istream& in);

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::vector<TreeNode> nodes_;
};

enum class SplitCriterion {
  kGini,           // classification; leaf value = weighted positive fraction
  kSquaredError,   // regression on targets; leaf value = sum(t) / sum(h)
};

enum class SplitRule {
  kBest,    // exhaustive thresholds between consecutive distinct values
  kRandom,  // one uniform threshold in (min, max) per candidate feature
};

struct TreeOptions {
  SplitCriterion criterion = SplitCriterion::kGini;
  SplitRule rule = SplitRule::kBest;
  int max_depth = 0;          // 0 = unlimited
  int min_samples_leaf = 1;
  std::size_t max_features = 0;  // 0 = all
};

// Per-row training signal. For kGini: weight and label (0/1). For
// kSquaredError: weight, target and hessian. Rows with zero weight do not
// take part (bootstrap out-of-bag rows).
struct TreeTargets {
  std::span<const double> weight;
  std::span<const double> target;
  std::span<const double> hessian;  // empty for kGini
};

struct GrownTree {
  DecisionTree tree;
  // Leaf node reached by each participating training row (-1 otherwise).
  std::vector<std::int32_t> leaf_of_row;
};

// Grows a tree level by level over presorted columns. Ties between
// candidate splits go to the lowest feature index, then the lowest
// threshold. Impure nodes are split even when the best gain is zero, so
// that XOR-like structure is reachable.
// Candidate count for a hyperparameter value: 0 = all, -1 = floor(sqrt(dim))
// (at least 1), n > 0 = min(n, dim).
std::size_t resolve_max_features(int max_features, std::size_t dim);

GrownTree grow_tree(const Dataset& data, const ColumnStore& columns,
                    const TreeTargets& targets, const TreeOptions& options,
                    std::uint64_t seed);

}  // namespace vandalstack

#endif  // VANDALSTACK_LEARNERS_TREE_H_
