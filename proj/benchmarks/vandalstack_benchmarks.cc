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

#include <benchmark/benchmark.h>

#include <numeric>

#include "vandalstack/evaluation.h"
#include "vandalstack/featurize.h"
#include "vandalstack/learners/model.h"
#include "vandalstack/random.h"
#include "vandalstack/stacking.h"
#include "vandalstack/synthetic.h"

namespace vandalstack {
namespace {

void BM_AucRoc(benchmark::State& state) {
  Rng rng(1);
  std::vector<ScoredExample> s(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = {i, rng.uniform01(), rng.uniform01() < 0.1};
  s[0].label = true;
  s[1].label = false;
  for (auto _ : state) benchmark::DoNotOptimize(auc_roc(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AucRoc)->Arg(1000)->Arg(100000);

void BM_ExtractAndEncode(benchmark::State& state) {
  const SyntheticCorpus corpus = make_synthetic_corpus(2000, 0.05, 3);
  std::vector<RawFeatures> raw;
  for (const auto& r : corpus.revisions) raw.push_back(extract_features(r));
  const FeatureSchema schema = build_schema(raw);
  for (auto _ : state) {
    for (const auto& r : corpus.revisions) {
      benchmark::DoNotOptimize(encode(extract_features(r), schema));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(corpus.revisions.size()));
}
BENCHMARK(BM_ExtractAndEncode);

void BM_TrainBoosting(benchmark::State& state) {
  const SyntheticTable table = make_synthetic_table(5000, 0.05, 4);
  const ModelSpec spec = ModelSpec::make(ModelFamily::kGradientBoosting);
  for (auto _ : state) benchmark::DoNotOptimize(train(spec, table.data));
}
BENCHMARK(BM_TrainBoosting)->Unit(benchmark::kMillisecond);

void BM_PredictStack(benchmark::State& state) {
  const SyntheticTable table = make_synthetic_table(3000, 0.05, 5);
  StackConfig cfg;
  cfg.first_stage = {ModelSpec::make(ModelFamily::kLogisticRegression),
                     ModelSpec::parse("extra_trees n_estimators=50"),
                     ModelSpec::parse("gradient_boosting n_estimators=50")};
  cfg.second_stage = {ModelSpec::make(ModelFamily::kGradientBoosting)};
  StackedPipeline p;
  p.schema = table.schema;
  p.selected.resize(table.schema.total_dim());
  std::iota(p.selected.begin(), p.selected.end(), std::size_t{0});
  p.ensemble = fit_stack(table.data, cfg);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_stack(p, table.data.row(i)));
    i = (i + 1) % table.data.size();
  }
}
BENCHMARK(BM_PredictStack);

}  // namespace
}  // namespace vandalstack

BENCHMARK_MAIN();
