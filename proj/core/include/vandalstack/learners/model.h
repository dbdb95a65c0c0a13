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

#ifndef VANDALSTACK_LEARNERS_MODEL_H_
#define VANDALSTACK_LEARNERS_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vandalstack/learners/dataset.h"
#include "vandalstack/sparse.h"

namespace vandalstack {

enum class ModelFamily {
  kRandomForest,
  kExtraTrees,
  kGradientBoosting,
  kLogisticRegression,
  kMlp,
};

std::string_view family_name(ModelFamily family);
ModelFamily parse_family(std::string_view name);

enum class Preset { kDefault, kOptimized };

Preset parse_preset(std::string_view name);

// Every knob any family reads. Each family documents which ones it uses;
// the rest are carried along untouched.
struct Hyperparameters {
  int n_estimators = 100;
  int max_depth = 0;  // 0 = unlimited
  int min_samples_leaf = 1;
  bool bootstrap = true;
  // Candidate features per split: 0 = all, -1 = floor(sqrt(d)), n > 0 = n.
  int max_features = 0;
  double learning_rate = 0.1;
  int hidden_units = 100;
  double l2 = 1.0;
  int max_iter = 1000;
  int batch_size = 32;
  double tolerance = 1e-6;
  int n_iter_no_change = 10;

  // Sets one field from text; throws Error(kInvalidArgument) for unknown
  // names or unparsable values.
  void set(std::string_view name, std::string_view value);
  std::vector<std::pair<std::string, std::string>> to_pairs() const;

  friend bool operator==(const Hyperparameters&, const Hyperparameters&) = default;
};

struct ModelSpec {
  ModelFamily family = ModelFamily::kGradientBoosting;
  Hyperparameters hyperparameters;
  std::uint64_t seed = 0;

  // Family defaults:
  //   random_forest        100 trees, unlimited depth, bootstrap, sqrt(d)
  //   extra_trees          100 trees, unlimited depth, no bootstrap, sqrt(d)
  //   gradient_boosting    100 rounds, depth 3, learning rate 0.1, all features
  //   logistic_regression  l2 = 1, 1000 iterations, gradient tolerance 1e-6
  //   mlp                  100 ReLU units, l2 = 1e-4, step 1e-3, batch 32,
  //                        200 epochs, plateau tolerance 1e-4 over 10 epochs
  // Optimized presets: random forest 200 trees depth 8, gradient boosting
  // 200 rounds depth 6. Other families have no optimized preset.
  static ModelSpec make(ModelFamily family, Preset preset = Preset::kDefault,
                        std::uint64_t seed = 0);

  // "family [preset=default|optimized] [key=value ...]"
  static ModelSpec parse(std::string_view text);
  std::string to_string() const;

  void validate() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// An immutable fitted model. Prediction checks the input dimension.
class TrainedModel {
 public:
  TrainedModel(ModelSpec spec, std::size_t trained_dim)
      : spec_(std::move(spec)), trained_dim_(trained_dim) {}
  virtual ~TrainedModel() = default;

  const ModelSpec& spec() const { return spec_; }
  std::size_t trained_dim() const { return trained_dim_; }

  // Throws Error(kDimensionMismatch).
  double predict_proba(const SparseVector& x) const;

  virtual bool tree_based() const { return false; }

  // Per-column total impurity decrease of tree models, not normalized.
  // Non-tree models throw Error(kUnsupportedFamily).
  virtual std::vector<double> raw_importances() const;

  // Family specific parameter block of the model file.
  virtual void write_parameters(std::ostream& out) const = 0;

 protected:
  virtual double predict_unchecked(const SparseVector& x) const = 0;

 private:
  ModelSpec spec_;
  std::size_t trained_dim_;
};

using ModelPtr = std::shared_ptr<const TrainedModel>;

// Fits a model of spec.family. Same spec and data give identical parameters.
ModelPtr train(const ModelSpec& spec, const Dataset& data);

double predict_proba(const TrainedModel& model, const SparseVector& x);
std::vector<double> predict_proba(const TrainedModel& model,
                                  std::span<const SparseVector> rows);

// Model file:
//   vandalstack-model v1
//   family <name>
//   seed <n>
//   dim <d>
//   hp <name> <value>          (one per hyperparameter)
//   params
//   <family parameter block>
//   end
void save_model(const TrainedModel& model, std::ostream& out);
ModelPtr load_model(std::istream& in);

inline constexpr std::string_view kModelHeader = "vandalstack-model v1";

struct ImportanceReport {
  // Non-negative; sums to 1 within 1e-9, or all zero when nothing was split.
  std::vector<double> importances;
};

// Throws Error(kUnsupportedFamily) for linear and MLP models.
ImportanceReport feature_importances(const TrainedModel& model);

// Ascending indices whose importance is >= threshold. Throws
// Error(kInvalidArgument) on a negative threshold.
std::vector<std::size_t> select_features(const ImportanceReport& report,
                                         double threshold);

// Output column k holds input column selected[k]. Throws
// Error(kIndexOutOfRange).
SparseVector project(const SparseVector& x, std::span<const std::size_t> selected);

// Default gradient boosting with seed 0, as used for feature selection.
inline constexpr double kDefaultSelectionThreshold = 1e-5;

}  // namespace vandalstack

#endif  // VANDALSTACK_LEARNERS_MODEL_H_
