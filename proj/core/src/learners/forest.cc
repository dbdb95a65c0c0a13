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

#include "vandalstack/learners/forest.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "vandalstack/error.h"
#include "vandalstack/parallel.h"
#include "vandalstack/random.h"

namespace vandalstack {

std::size_t resolve_max_features(int max_features, std::size_t dim) {
  if (max_features == 0 || dim == 0) return 0;
  if (max_features < 0) {
    const auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(dim)));
    return std::max<std::size_t>(1, root);
  }
  return std::min<std::size_t>(static_cast<std::size_t>(max_features), dim);
}

Forest::Forest(ModelSpec spec, std::size_t dim, std::vector<DecisionTree> trees)
    : TrainedModel(std::move(spec), dim), trees_(std::move(trees)) {}

std::vector<double> Forest::tree_probabilities(const SparseVector& x) const {
  std::vector<double> out;
  out.reserve(trees_.size());
  for (const auto& tree : trees_) out.push_back(tree.predict(x));
  return out;
}

double Forest::predict_unchecked(const SparseVector& x) const {
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.predict(x);
  return trees_.empty() ? 0.0 : sum / static_cast<double>(trees_.size());
}

std::vector<double> Forest::raw_importances() const {
  std::vector<double> out(trained_dim(), 0.0);
  for (const auto& tree : trees_) tree.accumulate_importances(out);
  return out;
}

void Forest::write_parameters(std::ostream& out) const {
  out << "trees " << trees_.size() << '\n';
  for (const auto& tree : trees_) tree.write(out);
}

namespace {

void check_tree_features(const DecisionTree& tree, std::size_t dim) {
  for (const auto& node : tree.nodes()) {
    if (!node.is_leaf() && static_cast<std::size_t>(node.feature) >= dim) {
      throw Error(ErrorCode::kFormat, "tree splits on feature " +
                                          std::to_string(node.feature) +
                                          " outside dimension " + std::to_string(dim));
    }
  }
}

}  // namespace

ModelPtr Forest::read_parameters(ModelSpec spec, std::size_t dim, std::istream& in) {
  std::string word;
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "trees") {
    throw Error(ErrorCode::kFormat, "forest: expected 'trees <n>'");
  }
  std::vector<DecisionTree> trees;
  trees.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    trees.push_back(DecisionTree::read(in));
    check_tree_features(trees.back(), dim);
  }
  return std::make_shared<Forest>(std::move(spec), dim, std::move(trees));
}

ModelPtr train_forest(const ModelSpec& spec, const Dataset& data) {
  const Hyperparameters& hp = spec.hyperparameters;
  const std::size_t n = data.size();
  TreeOptions options;
  options.criterion = SplitCriterion::kGini;
  options.rule = spec.family == ModelFamily::kExtraTrees ? SplitRule::kRandom : SplitRule::kBest;
  options.max_depth = hp.max_depth;
  options.min_samples_leaf = hp.min_samples_leaf;
  options.max_features = resolve_max_features(hp.max_features, data.dim());

  const ColumnStore columns(data);
  std::vector<double> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = data.label(i) ? 1.0 : 0.0;

  std::vector<DecisionTree> trees(static_cast<std::size_t>(hp.n_estimators));
  parallel_for(trees.size(), [&](std::size_t t) {
    Rng rng(derive_seed(spec.seed, "tree", t));
    std::vector<double> weight(n, 1.0);
    if (hp.bootstrap) {
      std::fill(weight.begin(), weight.end(), 0.0);
      for (std::size_t k = 0; k < n; ++k) weight[rng.uniform_below(n)] += 1.0;
    }
    TreeTargets targets{weight, labels, {}};
    trees[t] = grow_tree(data, columns, targets, options, rng()).tree;
  });
  return std::make_shared<Forest>(spec, data.dim(), std::move(trees));
}

}  // namespace vandalstack
