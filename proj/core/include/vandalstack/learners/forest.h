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

#ifndef VANDALSTACK_LEARNERS_FOREST_H_
#define VANDALSTACK_LEARNERS_FOREST_H_

#include <istream>
#include <vector>

#include "vandalstack/learners/model.h"
#include "vandalstack/learners/tree.h"

namespace vandalstack {

// Random forest or extra trees: the mean of per-tree leaf probabilities.
class Forest final : public TrainedModel {
 public:
  Forest(ModelSpec spec, std::size_t dim, std::vector<DecisionTree> trees);

  const std::vector<DecisionTree>& trees() const { return trees_; }
  std::vector<double> tree_probabilities(const SparseVector& x) const;

  bool tree_based() const override { return true; }
  std::vector<double> raw_importances() const override;
  void write_parameters(std::ostream& out) const override;

  static ModelPtr read_parameters(ModelSpec spec, std::size_t dim, std::istream& in);

 protected:
  double predict_unchecked(const SparseVector& x) const override;

 private:
  std::vector<DecisionTree> trees_;
};

// random_forest: Gini CART on a bootstrap sample (when hp.bootstrap) with
// hp.max_features candidates per split. extra_trees: the same without
// bootstrap by default, one random threshold per candidate feature.
// Tree t draws from derive_seed(spec.seed, "tree", t).
ModelPtr train_forest(const ModelSpec& spec, const Dataset& data);

}  // namespace vandalstack

#endif  // VANDALSTACK_LEARNERS_FOREST_H_
