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

#ifndef VANDALSTACK_LEARNERS_BOOSTING_H_
#define VANDALSTACK_LEARNERS_BOOSTING_H_

#include <istream>
#include <vector>

#include "vandalstack/learners/model.h"
#include "vandalstack/learners/tree.h"

namespace vandalstack {

// Binomial log-loss boosting. The raw score is
//   init + learning_rate * sum_t tree_t(x)
// where init is the prior log-odds and every leaf holds one Newton step
// sum(y - p) / sum(p (1 - p)) of the rows that reached it.
class BoostedTrees final : public TrainedModel {
 public:
  BoostedTrees(ModelSpec spec, std::size_t dim, double init_score,
               std::vector<DecisionTree> trees);

  double init_score() const { return init_score_; }
  const std::vector<DecisionTree>& trees() const { return trees_; }
  double raw_score(const SparseVector& x) const;

  // Mean training log-loss before the first round and after each round.
  // Only populated on freshly trained models.
  const std::vector<double>& training_loss() const { return training_loss_; }
  void set_training_loss(std::vector<double> loss) { training_loss_ = std::move(loss); }

  bool tree_based() const override { return true; }
  std::vector<double> raw_importances() const override;
  void write_parameters(std::ostream& out) const override;

  static ModelPtr read_parameters(ModelSpec spec, std::size_t dim, std::istream& in);

 protected:
  double predict_unchecked(const SparseVector& x) const override;

 private:
  double init_score_;
  std::vector<DecisionTree> trees_;
  std::vector<double> training_loss_;
};

std::shared_ptr<const BoostedTrees> train_boosting(const ModelSpec& spec,
                                                   const Dataset& data);

}  // namespace vandalstack

#endif  // VANDALSTACK_LEARNERS_BOOSTING_H_
