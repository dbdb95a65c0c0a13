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

#include "vandalstack/learners/model.h"

#include <cmath>
#include <sstream>
#include <string>

#include "vandalstack/error.h"
#include "vandalstack/learners/boosting.h"
#include "vandalstack/learners/forest.h"
#include "vandalstack/learners/linear.h"
#include "vandalstack/learners/mlp.h"
#include "vandalstack/number_format.h"

namespace vandalstack {
namespace {

[[noreturn]] void bad_hyperparameter(std::string_view name, std::string_view value) {
  throw Error(ErrorCode::kInvalidArgument, "bad hyperparameter " + std::string(name) +
                                               "=" + std::string(value));
}

int parse_int(std::string_view name, std::string_view value) {
  try {
    const std::int64_t v = parse_int64(value);
    if (v < INT32_MIN || v > INT32_MAX) bad_hyperparameter(name, value);
    return static_cast<int>(v);
  } catch (const Error&) {
    bad_hyperparameter(name, value);
  }
}

double parse_real(std::string_view name, std::string_view value) {
  try {
    const double v = parse_double(value);
    if (!std::isfinite(v)) bad_hyperparameter(name, value);
    return v;
  } catch (const Error&) {
    bad_hyperparameter(name, value);
  }
}

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

}  // namespace

std::string_view family_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::kRandomForest: return "random_forest";
    case ModelFamily::kExtraTrees: return "extra_trees";
    case ModelFamily::kGradientBoosting: return "gradient_boosting";
    case ModelFamily::kLogisticRegression: return "logistic_regression";
    case ModelFamily::kMlp: return "mlp";
  }
  return "unknown";
}

ModelFamily parse_family(std::string_view name) {
  for (auto f : {ModelFamily::kRandomForest, ModelFamily::kExtraTrees,
                 ModelFamily::kGradientBoosting, ModelFamily::kLogisticRegression,
                 ModelFamily::kMlp}) {
    if (family_name(f) == name) return f;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown model family '" + std::string(name) + "'");
}

Preset parse_preset(std::string_view name) {
  if (name == "default") return Preset::kDefault;
  if (name == "optimized") return Preset::kOptimized;
  throw Error(ErrorCode::kInvalidArgument, "unknown preset '" + std::string(name) + "'");
}

void Hyperparameters::set(std::string_view name, std::string_view value) {
  if (name == "n_estimators") {
    n_estimators = parse_int(name, value);
  } else if (name == "max_depth") {
    max_depth = value == "none" ? 0 : parse_int(name, value);
  } else if (name == "min_samples_leaf") {
    min_samples_leaf = parse_int(name, value);
  } else if (name == "bootstrap") {
    if (value == "true" || value == "1") {
      bootstrap = true;
    } else if (value == "false" || value == "0") {
      bootstrap = false;
    } else {
      bad_hyperparameter(name, value);
    }
  } else if (name == "max_features") {
    if (value == "all") {
      max_features = 0;
    } else if (value == "sqrt") {
      max_features = -1;
    } else {
      max_features = parse_int(name, value);
      if (max_features <= 0) bad_hyperparameter(name, value);
    }
  } else if (name == "learning_rate") {
    learning_rate = parse_real(name, value);
  } else if (name == "hidden_units") {
    hidden_units = parse_int(name, value);
  } else if (name == "l2") {
    l2 = parse_real(name, value);
  } else if (name == "max_iter") {
    max_iter = parse_int(name, value);
  } else if (name == "batch_size") {
    batch_size = parse_int(name, value);
  } else if (name == "tolerance") {
    tolerance = parse_real(name, value);
  } else if (name == "n_iter_no_change") {
    n_iter_no_change = parse_int(name, value);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown hyperparameter '" + std::string(name) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> Hyperparameters::to_pairs() const {
  std::string features = max_features == 0    ? "all"
                         : max_features == -1 ? "sqrt"
                                              : std::to_string(max_features);
  return {
      {"n_estimators", std::to_string(n_estimators)},
      {"max_depth", max_depth == 0 ? "none" : std::to_string(max_depth)},
      {"min_samples_leaf", std::to_string(min_samples_leaf)},
      {"bootstrap", bootstrap ? "true" : "false"},
      {"max_features", features},
      {"learning_rate", format_double(learning_rate)},
      {"hidden_units", std::to_string(hidden_units)},
      {"l2", format_double(l2)},
      {"max_iter", std::to_string(max_iter)},
      {"batch_size", std::to_string(batch_size)},
      {"tolerance", format_double(tolerance)},
      {"n_iter_no_change", std::to_string(n_iter_no_change)},
  };
}

ModelSpec ModelSpec::make(ModelFamily family, Preset preset, std::uint64_t seed) {
  ModelSpec spec;
  spec.family = family;
  spec.seed = seed;
  Hyperparameters& hp = spec.hyperparameters;
  const bool optimized = preset == Preset::kOptimized;
  switch (family) {
    case ModelFamily::kRandomForest:
      hp.n_estimators = optimized ? 200 : 100;
      hp.max_depth = optimized ? 8 : 0;
      hp.bootstrap = true;
      hp.max_features = -1;
      return spec;
    case ModelFamily::kExtraTrees:
      hp.bootstrap = false;
      hp.max_features = -1;
      break;
    case ModelFamily::kGradientBoosting:
      hp.n_estimators = optimized ? 200 : 100;
      hp.max_depth = optimized ? 6 : 3;
      hp.learning_rate = 0.1;
      hp.bootstrap = false;
      hp.max_features = 0;
      return spec;
    case ModelFamily::kLogisticRegression:
      hp.l2 = 1.0;
      hp.max_iter = 1000;
      hp.tolerance = 1e-6;
      break;
    case ModelFamily::kMlp:
      hp.hidden_units = 100;
      hp.l2 = 1e-4;
      hp.learning_rate = 1e-3;
      hp.batch_size = 32;
      hp.max_iter = 200;
      hp.tolerance = 1e-4;
      hp.n_iter_no_change = 10;
      break;
  }
  if (optimized) {
    throw Error(ErrorCode::kInvalidArgument,
                "no optimized preset for " + std::string(family_name(family)));
  }
  return spec;
}

ModelSpec ModelSpec::parse(std::string_view text) {
  const auto tokens = split_ws(text);
  if (tokens.empty()) throw Error(ErrorCode::kInvalidArgument, "empty model spec");
  const ModelFamily family = parse_family(tokens[0]);
  Preset preset = Preset::kDefault;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> overrides;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const std::size_t eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "expected key=value in model spec, got '" +
                                                   tokens[i] + "'");
    }
    std::string key = tokens[i].substr(0, eq);
    std::string value = tokens[i].substr(eq + 1);
    if (key == "preset") {
      preset = parse_preset(value);
    } else if (key == "seed") {
      seed = parse_uint64(value);
    } else {
      overrides.emplace_back(std::move(key), std::move(value));
    }
  }
  ModelSpec spec = make(family, preset, seed);
  for (const auto& [key, value] : overrides) spec.hyperparameters.set(key, value);
  spec.validate();
  return spec;
}

std::string ModelSpec::to_string() const {
  std::string out(family_name(family));
  const auto defaults = make(family).hyperparameters.to_pairs();
  const auto mine = hyperparameters.to_pairs();
  for (std::size_t i = 0; i < mine.size(); ++i) {
    if (mine[i].second != defaults[i].second) out += " " + mine[i].first + "=" + mine[i].second;
  }
  if (seed != 0) out += " seed=" + std::to_string(seed);
  return out;
}

void ModelSpec::validate() const {
  const Hyperparameters& hp = hyperparameters;
  auto fail = [this](const std::string& why) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(family_name(family)) + ": " + why);
  };
  const bool boosting = family == ModelFamily::kGradientBoosting;
  if (hp.n_estimators < (boosting ? 0 : 1)) fail("n_estimators too small");
  if (hp.max_depth < 0) fail("max_depth must be >= 1 or unlimited");
  if (hp.min_samples_leaf < 1) fail("min_samples_leaf must be >= 1");
  if (hp.max_features < -1) fail("bad max_features");
  if (!(hp.learning_rate > 0.0)) fail("learning_rate must be positive");
  if (hp.hidden_units < 1) fail("hidden_units must be >= 1");
  if (hp.l2 < 0.0) fail("l2 must be non-negative");
  if (hp.max_iter < 0) fail("max_iter must be non-negative");
  if (hp.batch_size < 1) fail("batch_size must be >= 1");
  if (hp.tolerance < 0.0) fail("tolerance must be non-negative");
  if (hp.n_iter_no_change < 1) fail("n_iter_no_change must be >= 1");
}

double TrainedModel::predict_proba(const SparseVector& x) const {
  if (x.dim() != trained_dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model trained on dimension " + std::to_string(trained_dim_) +
                    " got input of dimension " + std::to_string(x.dim()));
  }
  return predict_unchecked(x);
}

std::vector<double> TrainedModel::raw_importances() const {
  throw Error(ErrorCode::kUnsupportedFamily,
              std::string(family_name(spec_.family)) + " has no impurity importances");
}

ModelPtr train(const ModelSpec& spec, const Dataset& data) {
  spec.validate();
  if (data.empty()) throw Error(ErrorCode::kEmptyDataset, "cannot train on an empty dataset");
  switch (spec.family) {
    case ModelFamily::kRandomForest:
    case ModelFamily::kExtraTrees:
      return train_forest(spec, data);
    case ModelFamily::kGradientBoosting:
      return train_boosting(spec, data);
    case ModelFamily::kLogisticRegression:
      return train_logistic(spec, data);
    case ModelFamily::kMlp:
      return train_mlp(spec, data);
  }
  throw Error(ErrorCode::kUnsupportedFamily, "unknown family");
}

double predict_proba(const TrainedModel& model, const SparseVector& x) {
  return model.predict_proba(x);
}

std::vector<double> predict_proba(const TrainedModel& model, std::span<const SparseVector> rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(model.predict_proba(row));
  return out;
}

void save_model(const TrainedModel& model, std::ostream& out) {
  const ModelSpec& spec = model.spec();
  out << kModelHeader << '\n';
  out << "family " << family_name(spec.family) << '\n';
  out << "seed " << spec.seed << '\n';
  out << "dim " << model.trained_dim() << '\n';
  for (const auto& [key, value] : spec.hyperparameters.to_pairs()) {
    out << "hp " << key << ' ' << value << '\n';
  }
  out << "params\n";
  model.write_parameters(out);
  out << "end\n";
}

ModelPtr load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kModelHeader) {
    throw Error(ErrorCode::kFormat, "missing model header '" + std::string(kModelHeader) + "'");
  }
  std::string key, value;
  auto expect = [&](std::string_view want) {
    if (!(in >> key >> value) || key != want) {
      throw Error(ErrorCode::kFormat, "model file: expected '" + std::string(want) + "'");
    }
    return value;
  };
  ModelSpec spec;
  spec.family = parse_family(expect("family"));
  spec.seed = parse_uint64(expect("seed"));
  const std::size_t dim = parse_uint64(expect("dim"));
  while (in >> key && key == "hp") {
    if (!(in >> key >> value)) throw Error(ErrorCode::kFormat, "truncated hyperparameter");
    spec.hyperparameters.set(key, value);
  }
  if (key != "params") throw Error(ErrorCode::kFormat, "model file: expected 'params'");
  ModelPtr model;
  switch (spec.family) {
    case ModelFamily::kRandomForest:
    case ModelFamily::kExtraTrees:
      model = Forest::read_parameters(spec, dim, in);
      break;
    case ModelFamily::kGradientBoosting:
      model = BoostedTrees::read_parameters(spec, dim, in);
      break;
    case ModelFamily::kLogisticRegression:
      model = LogisticModel::read_parameters(spec, dim, in);
      break;
    case ModelFamily::kMlp:
      model = MlpModel::read_parameters(spec, dim, in);
      break;
  }
  if (!(in >> key) || key != "end") throw Error(ErrorCode::kFormat, "model file: missing 'end'");
  std::getline(in, line);
  return model;
}

ImportanceReport feature_importances(const TrainedModel& model) {
  ImportanceReport report;
  report.importances = model.raw_importances();
  double total = 0.0;
  for (double v : report.importances) total += v;
  if (total > 0.0) {
    for (double& v : report.importances) v /= total;
  } else {
    std::fill(report.importances.begin(), report.importances.end(), 0.0);
  }
  return report;
}

}  // namespace vandalstack
