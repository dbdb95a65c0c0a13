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

#ifndef VANDALSTACK_STACKING_H_
#define VANDALSTACK_STACKING_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "vandalstack/corpus.h"
#include "vandalstack/featurize.h"
#include "vandalstack/learners/model.h"

namespace vandalstack {

struct FoldPlan {
  std::size_t k = 3;
  std::vector<std::uint32_t> assignment;  // fold of each example
  std::uint64_t seed = 0;

  std::vector<std::size_t> fold_sizes() const;
  std::vector<std::size_t> members(std::size_t fold) const;
  std::vector<std::size_t> complement(std::size_t fold) const;
};

// Seeded shuffle, then round-robin over the shuffled order, so fold sizes
// differ by at most one. Throws Error(kTooFewExamples) unless n >= k >= 2.
FoldPlan kfold_assign(std::size_t n, std::size_t k, std::uint64_t seed);

struct StackConfig {
  std::vector<ModelSpec> first_stage;
  std::vector<ModelSpec> second_stage;
  std::size_t k = 3;
  std::uint64_t seed = 0;
  // Score test rows with one model per first-stage spec refit on all rows
  // instead of the mean of its k fold models.
  bool refit_full = false;

  // First stage: default MLP, default extra trees, extra trees with 200
  // trees, default gradient boosting, gradient boosting with 200 rounds,
  // default logistic regression. Second stage: random forest 200 x depth 8,
  // default MLP, gradient boosting 200 x depth 6, default gradient boosting.
  static StackConfig standard(std::uint64_t seed = 0);

  void validate() const;
};

// Seeds handed to each model; every one derives from StackConfig::seed.
std::uint64_t fold_plan_seed(std::uint64_t master);
std::uint64_t first_stage_seed(std::uint64_t master, std::size_t spec, std::size_t fold);
std::uint64_t full_refit_seed(std::uint64_t master, std::size_t spec);
std::uint64_t second_stage_seed(std::uint64_t master, std::size_t spec);

using Trainer = std::function<ModelPtr(const ModelSpec&, const Dataset&)>;

struct FirstStageResult {
  FoldPlan plan;
  // fold_models[spec][fold] was trained on every fold except fold.
  std::vector<std::vector<ModelPtr>> fold_models;
  // Out-of-fold meta-features: n rows of |first_stage| scores.
  std::vector<std::vector<double>> out_of_fold;
};

FirstStageResult fit_first_stage(const Dataset& data, const StackConfig& cfg,
                                 const Trainer& trainer = train);

class StackedEnsemble {
 public:
  StackedEnsemble() = default;
  StackedEnsemble(StackConfig config, std::size_t input_dim,
                  std::vector<std::vector<ModelPtr>> fold_models,
                  std::vector<ModelPtr> full_models,
                  std::vector<ModelPtr> second_models);

  const StackConfig& config() const { return config_; }
  std::size_t input_dim() const { return input_dim_; }
  const std::vector<std::vector<ModelPtr>>& fold_models() const { return fold_models_; }
  const std::vector<ModelPtr>& full_models() const { return full_models_; }
  const std::vector<ModelPtr>& second_models() const { return second_models_; }

  // One score per first-stage spec: the mean over its fold models, or the
  // refit model when the config asks for it.
  std::vector<double> meta_features(const SparseVector& x) const;
  std::vector<double> second_stage_scores(const SparseVector& x) const;
  double predict(const SparseVector& x) const;

 private:
  StackConfig config_;
  std::size_t input_dim_ = 0;
  std::vector<std::vector<ModelPtr>> fold_models_;
  std::vector<ModelPtr> full_models_;
  std::vector<ModelPtr> second_models_;
};

// First stage by out-of-fold k-fold, second stage on the out-of-fold
// meta-features only.
StackedEnsemble fit_stack(const Dataset& data, const StackConfig& cfg,
                          const Trainer& trainer = train);

// Arithmetic mean. Throws Error(kEmptyList).
double mean_ensemble(std::span<const double> scores);

// Everything needed to score a raw revision.
struct StackedPipeline {
  FeatureSchema schema;
  std::vector<std::size_t> selected;
  StackedEnsemble ensemble;
};

// x lives in schema space; the selection is applied here. Throws
// Error(kDimensionMismatch).
double predict_stack(const StackedPipeline& pipeline, const SparseVector& x);

// extract_features -> encode -> predict_stack.
double score_revision(const StackedPipeline& pipeline, const Revision& revision);

// Pipeline file: a header line followed by length-prefixed sections
//   section <name> <byte count>\n<bytes>
// in the order manifest, schema, selection, then every model file. The
// manifest names the configuration and the model sections.
void save_pipeline(const StackedPipeline& pipeline, std::ostream& out);
StackedPipeline load_pipeline(std::istream& in);
void save_pipeline_file(const StackedPipeline& pipeline, const std::string& path);
StackedPipeline load_pipeline_file(const std::string& path);

inline constexpr std::string_view kPipelineHeader = "vandalstack-pipeline v1";

}  // namespace vandalstack

#endif  // VANDALSTACK_STACKING_H_
