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

#include "vandalstack/learners/boosting.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "vandalstack/error.h"
#include "vandalstack/learners/linear.h"
#include "vandalstack/number_format.h"
#include "vandalstack/random.h"

namespace vandalstack {

namespace {

constexpr double kProbabilityFloor = 1e-15;

double log_loss(double y, double p) {
  p = std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor);
  return y > 0.5 ? -std::log(p) : -std::log1p(-p);
}

}  // namespace

BoostedTrees::BoostedTrees(ModelSpec spec, std::size_t dim, double init_score,
                           std::vector<DecisionTree> trees)
    : TrainedModel(std::move(spec), dim), init_score_(init_score), trees_(std::move(trees)) {}

double BoostedTrees::raw_score(const SparseVector& x) const {
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.predict(x);
  return init_score_ + spec().hyperparameters.learning_rate * sum;
}

double BoostedTrees::predict_unchecked(const SparseVector& x) const {
  return sigmoid(raw_score(x));
}

std::vector<double> BoostedTrees::raw_importances() const {
  std::vector<double> out(trained_dim(), 0.0);
  for (const auto& tree : trees_) tree.accumulate_importances(out);
  return out;
}

void BoostedTrees::write_parameters(std::ostream& out) const {
  out << "init " << format_double(init_score_) << '\n';
  out << "trees " << trees_.size() << '\n';
  for (const auto& tree : trees_) tree.write(out);
}

ModelPtr BoostedTrees::read_parameters(ModelSpec spec, std::size_t dim, std::istream& in) {
  std::string word, value;
  if (!(in >> word >> value) || word != "init") {
    throw Error(ErrorCode::kFormat, "boosting: expected 'init <score>'");
  }
  const double init = parse_double(value);
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "trees") {
    throw Error(ErrorCode::kFormat, "boosting: expected 'trees <n>'");
  }
  std::vector<DecisionTree> trees;
  trees.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    trees.push_back(DecisionTree::read(in));
    for (const auto& node : trees.back().nodes()) {
      if (!node.is_leaf() && static_cast<std::size_t>(node.feature) >= dim) {
        throw Error(ErrorCode::kFormat, "tree feature outside model dimension");
      }
    }
  }
  return std::make_shared<BoostedTrees>(std::move(spec), dim, init, std::move(trees));
}

std::shared_ptr<const BoostedTrees> train_boosting(const ModelSpec& spec, const Dataset& data) {
  const Hyperparameters& hp = spec.hyperparameters;
  const std::size_t n = data.size();
  const double prior = std::clamp(
      static_cast<double>(data.positive_count()) / static_cast<double>(n), kProbabilityFloor,
      1.0 - kProbabilityFloor);
  const double init = std::log(prior / (1.0 - prior));

  TreeOptions options;
  options.criterion = SplitCriterion::kSquaredError;
  options.rule = SplitRule::kBest;
  options.max_depth = hp.max_depth;
  options.min_samples_leaf = hp.min_samples_leaf;
  options.max_features = resolve_max_features(hp.max_features, data.dim());

  const ColumnStore columns(data);
  std::vector<double> y(n), raw(n, init), residual(n), hessian(n);
  const std::vector<double> weight(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) y[i] = data.label(i) ? 1.0 : 0.0;

  auto mean_loss = [&] {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += log_loss(y[i], sigmoid(raw[i]));
    return total / static_cast<double>(n);
  };

  std::vector<double> history{mean_loss()};
  std::vector<DecisionTree> trees;
  trees.reserve(static_cast<std::size_t>(hp.n_estimators));
  for (int t = 0; t < hp.n_estimators; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(raw[i]);
      residual[i] = y[i] - p;
      hessian[i] = p * (1.0 - p);
    }
    TreeTargets targets{weight, residual, hessian};
    GrownTree grown = grow_tree(data, columns, targets, options,
                                derive_seed(spec.seed, "round", static_cast<std::uint64_t>(t)));
    const auto nodes = grown.tree.nodes();
    for (std::size_t i = 0; i < n; ++i) {
      raw[i] += hp.learning_rate * nodes[static_cast<std::size_t>(grown.leaf_of_row[i])].value;
    }
    trees.push_back(std::move(grown.tree));
    history.push_back(mean_loss());
  }
  auto model = std::make_shared<BoostedTrees>(spec, data.dim(), init, std::move(trees));
  model->set_training_loss(std::move(history));
  return model;
}

}  // namespace vandalstack
