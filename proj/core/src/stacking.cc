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

#include "vandalstack/stacking.h"

#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"
#include "vandalstack/parallel.h"
#include "vandalstack/random.h"

namespace vandalstack {

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (auto f : assignment) ++sizes[f];
  return sizes;
}

std::vector<std::size_t> FoldPlan::members(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::complement(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != fold) out.push_back(i);
  }
  return out;
}

FoldPlan kfold_assign(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || n < k) {
    throw Error(ErrorCode::kTooFewExamples, "k-fold needs n >= k >= 2 (n=" + std::to_string(n) +
                                                ", k=" + std::to_string(k) + ")");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  shuffle(std::span<std::size_t>(order), rng);
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.resize(n);
  for (std::size_t r = 0; r < n; ++r) plan.assignment[order[r]] = static_cast<std::uint32_t>(r % k);
  return plan;
}

StackConfig StackConfig::standard(std::uint64_t seed) {
  StackConfig cfg;
  cfg.seed = seed;
  auto with_trees = [](ModelFamily family, int n) {
    ModelSpec spec = ModelSpec::make(family);
    spec.hyperparameters.n_estimators = n;
    return spec;
  };
  cfg.first_stage = {
      ModelSpec::make(ModelFamily::kMlp),
      ModelSpec::make(ModelFamily::kExtraTrees),
      with_trees(ModelFamily::kExtraTrees, 200),
      ModelSpec::make(ModelFamily::kGradientBoosting),
      with_trees(ModelFamily::kGradientBoosting, 200),
      ModelSpec::make(ModelFamily::kLogisticRegression),
  };
  cfg.second_stage = {
      ModelSpec::make(ModelFamily::kRandomForest, Preset::kOptimized),
      ModelSpec::make(ModelFamily::kMlp),
      ModelSpec::make(ModelFamily::kGradientBoosting, Preset::kOptimized),
      ModelSpec::make(ModelFamily::kGradientBoosting),
  };
  return cfg;
}

void StackConfig::validate() const {
  if (first_stage.empty() || second_stage.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "both stacking stages need at least one model");
  }
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "stacking needs k >= 2");
  for (const auto& spec : first_stage) spec.validate();
  for (const auto& spec : second_stage) spec.validate();
}

std::uint64_t fold_plan_seed(std::uint64_t master) { return derive_seed(master, "folds"); }

std::uint64_t first_stage_seed(std::uint64_t master, std::size_t spec, std::size_t fold) {
  return derive_seed(derive_seed(master, "first_stage", spec), "fold", fold);
}

std::uint64_t full_refit_seed(std::uint64_t master, std::size_t spec) {
  return derive_seed(master, "full_refit", spec);
}

std::uint64_t second_stage_seed(std::uint64_t master, std::size_t spec) {
  return derive_seed(master, "second_stage", spec);
}

namespace {

ModelSpec seeded(ModelSpec spec, std::uint64_t seed) {
  spec.seed = seed;
  return spec;
}

}  // namespace

FirstStageResult fit_first_stage(const Dataset& data, const StackConfig& cfg,
                                 const Trainer& trainer) {
  cfg.validate();
  const std::size_t specs = cfg.first_stage.size();
  FirstStageResult result;
  result.plan = kfold_assign(data.size(), cfg.k, fold_plan_seed(cfg.seed));
  result.fold_models.assign(specs, std::vector<ModelPtr>(cfg.k));
  result.out_of_fold.assign(data.size(), std::vector<double>(specs, 0.0));

  parallel_for(specs * cfg.k, [&](std::size_t task) {
    const std::size_t j = task / cfg.k;
    const std::size_t fold = task % cfg.k;
    const Dataset train_set = data.subset(result.plan.complement(fold));
    ModelPtr model = trainer(seeded(cfg.first_stage[j], first_stage_seed(cfg.seed, j, fold)),
                             train_set);
    for (std::size_t i : result.plan.members(fold)) {
      result.out_of_fold[i][j] = model->predict_proba(data.row(i));
    }
    result.fold_models[j][fold] = std::move(model);
  });
  return result;
}

StackedEnsemble::StackedEnsemble(StackConfig config, std::size_t input_dim,
                                 std::vector<std::vector<ModelPtr>> fold_models,
                                 std::vector<ModelPtr> full_models,
                                 std::vector<ModelPtr> second_models)
    : config_(std::move(config)),
      input_dim_(input_dim),
      fold_models_(std::move(fold_models)),
      full_models_(std::move(full_models)),
      second_models_(std::move(second_models)) {
  if (fold_models_.size() != config_.first_stage.size() ||
      second_models_.size() != config_.second_stage.size() ||
      (config_.refit_full && full_models_.size() != config_.first_stage.size())) {
    throw Error(ErrorCode::kInvalidArgument, "stacked ensemble does not match its config");
  }
  for (const auto& per_spec : fold_models_) {
    if (per_spec.size() != config_.k) {
      throw Error(ErrorCode::kInvalidArgument, "expected k fold models per first-stage spec");
    }
  }
  for (const auto& m : second_models_) {
    if (m->trained_dim() != fold_models_.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "second-stage model dimension differs from the first-stage count");
    }
  }
}

std::vector<double> StackedEnsemble::meta_features(const SparseVector& x) const {
  if (x.dim() != input_dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "ensemble expects dimension " + std::to_string(input_dim_) + ", got " +
                    std::to_string(x.dim()));
  }
  std::vector<double> meta(fold_models_.size());
  for (std::size_t j = 0; j < meta.size(); ++j) {
    if (config_.refit_full) {
      meta[j] = full_models_[j]->predict_proba(x);
      continue;
    }
    double sum = 0.0;
    for (const auto& model : fold_models_[j]) sum += model->predict_proba(x);
    meta[j] = sum / static_cast<double>(fold_models_[j].size());
  }
  return meta;
}

std::vector<double> StackedEnsemble::second_stage_scores(const SparseVector& x) const {
  const SparseVector meta = SparseVector::from_dense(meta_features(x));
  std::vector<double> scores;
  scores.reserve(second_models_.size());
  for (const auto& model : second_models_) scores.push_back(model->predict_proba(meta));
  return scores;
}

double StackedEnsemble::predict(const SparseVector& x) const {
  const auto scores = second_stage_scores(x);
  return mean_ensemble(scores);
}

StackedEnsemble fit_stack(const Dataset& data, const StackConfig& cfg, const Trainer& trainer) {
  FirstStageResult first = fit_first_stage(data, cfg, trainer);
  const std::size_t specs = cfg.first_stage.size();

  std::vector<ModelPtr> full(cfg.refit_full ? specs : 0);
  parallel_for(full.size(), [&](std::size_t j) {
    full[j] = trainer(seeded(cfg.first_stage[j], full_refit_seed(cfg.seed, j)), data);
  });

  std::vector<SparseVector> meta_rows;
  meta_rows.reserve(data.size());
  for (const auto& row : first.out_of_fold) meta_rows.push_back(SparseVector::from_dense(row));
  std::vector<std::uint8_t> labels(data.labels().begin(), data.labels().end());
  const Dataset meta(specs, std::move(meta_rows), std::move(labels));

  std::vector<ModelPtr> second(cfg.second_stage.size());
  parallel_for(second.size(), [&](std::size_t j) {
    second[j] = trainer(seeded(cfg.second_stage[j], second_stage_seed(cfg.seed, j)), meta);
  });
  return StackedEnsemble(cfg, data.dim(), std::move(first.fold_models), std::move(full),
                         std::move(second));
}

double mean_ensemble(std::span<const double> scores) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyList, "mean of an empty score list");
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

double predict_stack(const StackedPipeline& pipeline, const SparseVector& x) {
  if (x.dim() != pipeline.schema.total_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pipeline expects dimension " + std::to_string(pipeline.schema.total_dim()) +
                    ", got " + std::to_string(x.dim()));
  }
  return pipeline.ensemble.predict(project(x, pipeline.selected));
}

double score_revision(const StackedPipeline& pipeline, const Revision& revision) {
  return predict_stack(pipeline, encode(extract_features(revision), pipeline.schema));
}

namespace {

void write_section(std::ostream& out, std::string_view name, const std::string& bytes) {
  out << "section " << name << ' ' << bytes.size() << '\n' << bytes;
}

std::string model_bytes(const TrainedModel& model) {
  std::ostringstream s;
  save_model(model, s);
  return s.str();
}

std::string first_name(std::size_t j, std::size_t fold) {
  return "first." + std::to_string(j) + "." + std::to_string(fold);
}

class SectionReader {
 public:
  explicit SectionReader(std::istream& in) : in_(in) {}

  std::string next(std::string_view expected_name) {
    std::string line;
    if (!std::getline(in_, line)) {
      throw Error(ErrorCode::kFormat, "pipeline: missing section '" +
                                          std::string(expected_name) + "'");
    }
    std::istringstream header(line);
    std::string word, name;
    std::size_t bytes = 0;
    if (!(header >> word >> name >> bytes) || word != "section" || name != expected_name) {
      throw Error(ErrorCode::kFormat, "pipeline: expected section '" +
                                          std::string(expected_name) + "', got '" + line + "'");
    }
    std::string body(bytes, '\0');
    if (!in_.read(body.data(), static_cast<std::streamsize>(bytes))) {
      throw Error(ErrorCode::kFormat, "pipeline: truncated section '" + name + "'");
    }
    return body;
  }

 private:
  std::istream& in_;
};

ModelPtr parse_model(const std::string& bytes) {
  std::istringstream s(bytes);
  return load_model(s);
}

}  // namespace

void save_pipeline(const StackedPipeline& pipeline, std::ostream& out) {
  const StackedEnsemble& e = pipeline.ensemble;
  const StackConfig& cfg = e.config();

  std::ostringstream manifest;
  manifest << "k " << cfg.k << '\n'
           << "seed " << cfg.seed << '\n'
           << "refit_full " << (cfg.refit_full ? 1 : 0) << '\n'
           << "input_dim " << e.input_dim() << '\n';
  for (const auto& spec : cfg.first_stage) manifest << "first " << spec.to_string() << '\n';
  for (const auto& spec : cfg.second_stage) manifest << "second " << spec.to_string() << '\n';
  for (std::size_t j = 0; j < cfg.first_stage.size(); ++j) {
    for (std::size_t f = 0; f < cfg.k; ++f) manifest << "model " << first_name(j, f) << '\n';
  }
  for (std::size_t j = 0; j < e.full_models().size(); ++j) {
    manifest << "model full." << j << '\n';
  }
  for (std::size_t j = 0; j < cfg.second_stage.size(); ++j) {
    manifest << "model second." << j << '\n';
  }

  std::ostringstream schema;
  pipeline.schema.save(schema);

  std::ostringstream selection;
  selection << "selected " << pipeline.selected.size() << '\n';
  for (std::size_t c : pipeline.selected) selection << c << '\n';

  out << kPipelineHeader << '\n';
  write_section(out, "manifest", manifest.str());
  write_section(out, "schema", schema.str());
  write_section(out, "selection", selection.str());
  for (std::size_t j = 0; j < cfg.first_stage.size(); ++j) {
    for (std::size_t f = 0; f < cfg.k; ++f) {
      write_section(out, first_name(j, f), model_bytes(*e.fold_models()[j][f]));
    }
  }
  for (std::size_t j = 0; j < e.full_models().size(); ++j) {
    write_section(out, "full." + std::to_string(j), model_bytes(*e.full_models()[j]));
  }
  for (std::size_t j = 0; j < cfg.second_stage.size(); ++j) {
    write_section(out, "second." + std::to_string(j), model_bytes(*e.second_models()[j]));
  }
}

StackedPipeline load_pipeline(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kPipelineHeader) {
    throw Error(ErrorCode::kFormat, "missing pipeline header '" + std::string(kPipelineHeader) + "'");
  }
  SectionReader sections(in);

  StackConfig cfg;
  std::size_t input_dim = 0;
  std::size_t full_count = 0;
  {
    std::istringstream manifest(sections.next("manifest"));
    while (std::getline(manifest, line)) {
      const std::size_t space = line.find(' ');
      const std::string key = line.substr(0, space);
      const std::string value = space == std::string::npos ? "" : line.substr(space + 1);
      if (key == "k") {
        cfg.k = parse_uint64(value);
      } else if (key == "seed") {
        cfg.seed = parse_uint64(value);
      } else if (key == "refit_full") {
        cfg.refit_full = value == "1";
      } else if (key == "input_dim") {
        input_dim = parse_uint64(value);
      } else if (key == "first") {
        cfg.first_stage.push_back(ModelSpec::parse(value));
      } else if (key == "second") {
        cfg.second_stage.push_back(ModelSpec::parse(value));
      } else if (key == "model") {
        if (value.starts_with("full.")) ++full_count;
      } else {
        throw Error(ErrorCode::kFormat, "pipeline manifest: unknown key '" + key + "'");
      }
    }
  }
  cfg.validate();

  StackedPipeline pipeline;
  {
    std::istringstream schema(sections.next("schema"));
    pipeline.schema = FeatureSchema::load(schema);
  }
  {
    std::istringstream selection(sections.next("selection"));
    std::string word;
    std::size_t count = 0;
    if (!(selection >> word >> count) || word != "selected") {
      throw Error(ErrorCode::kFormat, "pipeline: bad selection section");
    }
    pipeline.selected.resize(count);
    for (auto& c : pipeline.selected) {
      if (!(selection >> word)) throw Error(ErrorCode::kFormat, "pipeline: truncated selection");
      c = parse_uint64(word);
      if (c >= pipeline.schema.total_dim()) {
        throw Error(ErrorCode::kFormat, "pipeline: selected column outside the schema");
      }
    }
  }
  if (input_dim != pipeline.selected.size()) {
    throw Error(ErrorCode::kFormat, "pipeline: input_dim differs from the selection size");
  }

  std::vector<std::vector<ModelPtr>> fold_models(cfg.first_stage.size());
  for (std::size_t j = 0; j < cfg.first_stage.size(); ++j) {
    for (std::size_t f = 0; f < cfg.k; ++f) {
      fold_models[j].push_back(parse_model(sections.next(first_name(j, f))));
    }
  }
  std::vector<ModelPtr> full;
  for (std::size_t j = 0; j < full_count; ++j) {
    full.push_back(parse_model(sections.next("full." + std::to_string(j))));
  }
  std::vector<ModelPtr> second;
  for (std::size_t j = 0; j < cfg.second_stage.size(); ++j) {
    second.push_back(parse_model(sections.next("second." + std::to_string(j))));
  }
  for (const auto& per_spec : fold_models) {
    for (const auto& m : per_spec) {
      if (m->trained_dim() != input_dim) {
        throw Error(ErrorCode::kFormat, "pipeline: first-stage model dimension mismatch");
      }
    }
  }
  pipeline.ensemble = StackedEnsemble(std::move(cfg), input_dim, std::move(fold_models),
                                      std::move(full), std::move(second));
  return pipeline;
}

void save_pipeline_file(const StackedPipeline& pipeline, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  save_pipeline(pipeline, out);
  if (!out.flush()) throw Error(ErrorCode::kIo, "write failed: " + path);
}

StackedPipeline load_pipeline_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return load_pipeline(in);
}

}  // namespace vandalstack
