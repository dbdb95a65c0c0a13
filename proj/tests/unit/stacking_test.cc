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

#include <gtest/gtest.h>

#include <numeric>
#include <set>
#include <sstream>

#include "support/test_models.h"
#include "vandalstack/error.h"
#include "vandalstack/stacking.h"
#include "vandalstack/synthetic.h"

namespace vandalstack {
namespace {

using testing::ConstantModel;
using testing::distinct_rows;
using testing::train_memorizer;

StackConfig small_config(std::uint64_t seed) {
  StackConfig cfg;
  cfg.seed = seed;
  cfg.first_stage = {ModelSpec::make(ModelFamily::kLogisticRegression),
                     ModelSpec::parse("gradient_boosting n_estimators=10"),
                     ModelSpec::parse("extra_trees n_estimators=10")};
  cfg.second_stage = {ModelSpec::make(ModelFamily::kLogisticRegression),
                      ModelSpec::parse("gradient_boosting n_estimators=5 max_depth=2")};
  return cfg;
}

StackedPipeline small_pipeline(std::uint64_t seed, bool refit_full = false) {
  SyntheticTable table = make_synthetic_table(400, 0.2, seed);
  StackedPipeline p;
  p.schema = table.schema;
  p.selected.resize(table.schema.total_dim());
  std::iota(p.selected.begin(), p.selected.end(), std::size_t{0});
  StackConfig cfg = small_config(seed);
  cfg.refit_full = refit_full;
  p.ensemble = fit_stack(table.data, cfg);
  return p;
}

TEST(FoldTest, SizesAndDeterminism) {
  EXPECT_EQ(kfold_assign(6, 3, 1).fold_sizes(), (std::vector<std::size_t>{2, 2, 2}));
  auto sizes = kfold_assign(7, 3, 1).fold_sizes();
  EXPECT_EQ(std::multiset<std::size_t>(sizes.begin(), sizes.end()),
            (std::multiset<std::size_t>{3, 2, 2}));
  EXPECT_EQ(kfold_assign(100, 3, 9).assignment, kfold_assign(100, 3, 9).assignment);
  EXPECT_NE(kfold_assign(100, 3, 9).assignment, kfold_assign(100, 3, 10).assignment);
  EXPECT_THROW(kfold_assign(2, 3, 0), Error);
  EXPECT_THROW(kfold_assign(5, 1, 0), Error);
  const FoldPlan plan = kfold_assign(10, 3, 4);
  EXPECT_EQ(plan.members(0).size() + plan.complement(0).size(), 10u);
}

TEST(SeedTest, PurposesDiffer) {
  const std::set<std::uint64_t> seeds{fold_plan_seed(1), first_stage_seed(1, 0, 0),
                                      first_stage_seed(1, 0, 1), first_stage_seed(1, 1, 0),
                                      full_refit_seed(1, 0), second_stage_seed(1, 0)};
  EXPECT_EQ(seeds.size(), 6u);
}

TEST(StackConfigTest, StandardShape) {
  const StackConfig cfg = StackConfig::standard(3);
  ASSERT_EQ(cfg.first_stage.size(), 6u);
  ASSERT_EQ(cfg.second_stage.size(), 4u);
  EXPECT_EQ(cfg.k, 3u);
  EXPECT_EQ(cfg.first_stage[0].family, ModelFamily::kMlp);
  EXPECT_EQ(cfg.first_stage[2].hyperparameters.n_estimators, 200);
  EXPECT_EQ(cfg.second_stage[0].hyperparameters.max_depth, 8);
  EXPECT_NO_THROW(cfg.validate());
  StackConfig empty = cfg;
  empty.second_stage.clear();
  EXPECT_THROW(empty.validate(), Error);
}

TEST(FirstStageTest, MemorizerNeverSeesItsOwnRows) {
  const Dataset data = distinct_rows(90);
  StackConfig cfg;
  cfg.seed = 5;
  cfg.first_stage = {ModelSpec::make(ModelFamily::kLogisticRegression),
                     ModelSpec::make(ModelFamily::kMlp)};
  cfg.second_stage = {ModelSpec::make(ModelFamily::kLogisticRegression)};
  const FirstStageResult r = fit_first_stage(data, cfg, train_memorizer);
  ASSERT_EQ(r.out_of_fold.size(), 90u);
  for (const auto& row : r.out_of_fold) {
    ASSERT_EQ(row.size(), 2u);
    for (double v : row) EXPECT_EQ(v, 0.5);
  }
  // The same models do remember their training rows.
  const std::size_t i = r.plan.complement(0).front();
  EXPECT_EQ(r.fold_models[0][0]->predict_proba(data.row(i)), data.label(i) ? 1.0 : 0.0);
}

TEST(FirstStageTest, MetaMatrixShapeAndRange) {
  const SyntheticTable table = make_synthetic_table(300, 0.2, 2);
  const FirstStageResult r = fit_first_stage(table.data, small_config(2));
  ASSERT_EQ(r.fold_models.size(), 3u);
  for (const auto& per_spec : r.fold_models) EXPECT_EQ(per_spec.size(), 3u);
  for (const auto& row : r.out_of_fold) {
    ASSERT_EQ(row.size(), 3u);
    for (double v : row) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(MeanEnsembleTest, Examples) {
  const std::vector<double> four{0.2, 0.4, 0.6, 0.8};
  EXPECT_NEAR(mean_ensemble(four), 0.5, 1e-15);
  const std::vector<double> one{0.3};
  EXPECT_EQ(mean_ensemble(one), 0.3);
  const std::vector<double> ends{0.0, 1.0};
  EXPECT_EQ(mean_ensemble(ends), 0.5);
  EXPECT_THROW(mean_ensemble({}), Error);
}

TEST(EnsembleTest, ConstantFirstStage) {
  StackConfig cfg;
  cfg.k = 2;
  cfg.first_stage = {ModelSpec::make(ModelFamily::kLogisticRegression),
                     ModelSpec::make(ModelFamily::kLogisticRegression)};
  cfg.second_stage = {ModelSpec::make(ModelFamily::kLogisticRegression)};
  const ModelSpec s = cfg.first_stage[0];
  auto c = [&](double v, std::size_t dim) { return std::make_shared<ConstantModel>(s, dim, v); };
  std::vector<std::vector<ModelPtr>> folds{{c(0.7, 4), c(0.7, 4)}, {c(0.7, 4), c(0.7, 4)}};
  const StackedEnsemble e(cfg, 4, folds, {}, {c(0.25, 2)});
  EXPECT_EQ(e.meta_features(SparseVector(4)), (std::vector<double>{0.7, 0.7}));
  EXPECT_EQ(e.predict(SparseVector(4)), 0.25);
  EXPECT_THROW(e.predict(SparseVector(5)), Error);
  EXPECT_THROW(StackedEnsemble(cfg, 4, folds, {}, {c(0.25, 3)}), Error);
  EXPECT_THROW(StackedEnsemble(cfg, 4, {folds[0]}, {}, {c(0.25, 2)}), Error);
}

TEST(EnsembleTest, PredictIsMeanOfSecondStage) {
  const StackedPipeline p = small_pipeline(3);
  const SyntheticTable table = make_synthetic_table(50, 0.2, 99);
  for (const auto& x : table.data.rows()) {
    const auto scores = p.ensemble.second_stage_scores(x);
    ASSERT_EQ(scores.size(), 2u);
    const double y = predict_stack(p, x);
    EXPECT_EQ(y, mean_ensemble(scores));
    EXPECT_GE(y, 0.0);
    EXPECT_LE(y, 1.0);
  }
  EXPECT_THROW(predict_stack(p, SparseVector(3)), Error);
}

TEST(PipelineTest, RoundTripIsBitwise) {
  for (bool refit : {false, true}) {
    const StackedPipeline p = small_pipeline(4, refit);
    std::ostringstream first;
    save_pipeline(p, first);
    std::istringstream in(first.str());
    const StackedPipeline loaded = load_pipeline(in);
    std::ostringstream second;
    save_pipeline(loaded, second);
    EXPECT_EQ(second.str(), first.str());
    EXPECT_EQ(loaded.ensemble.config().refit_full, refit);
    const SyntheticTable table = make_synthetic_table(60, 0.2, 7);
    for (const auto& x : table.data.rows()) ASSERT_EQ(predict_stack(loaded, x), predict_stack(p, x));
  }
}

TEST(PipelineTest, SameSeedSameBytes) {
  std::ostringstream a, b;
  save_pipeline(small_pipeline(8), a);
  save_pipeline(small_pipeline(8), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(PipelineTest, RejectsBadInput) {
  std::istringstream wrong("vandalstack-pipeline v9\n");
  EXPECT_THROW(load_pipeline(wrong), Error);
  std::ostringstream good;
  save_pipeline(small_pipeline(1), good);
  std::istringstream cut(good.str().substr(0, good.str().size() - 10));
  EXPECT_THROW(load_pipeline(cut), Error);
}

}  // namespace
}  // namespace vandalstack
