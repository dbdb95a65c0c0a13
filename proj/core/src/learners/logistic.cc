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

#include <cmath>
#include <string>

#include "vandalstack/error.h"
#include "vandalstack/learners/linear.h"
#include "vandalstack/number_format.h"
#include "vector_io.h"

namespace vandalstack {
namespace {

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

std::vector<SparseVector> scale_rows(const MaxAbsScaler& scaler, const Dataset& data) {
  std::vector<SparseVector> out;
  out.reserve(data.size());
  for (const auto& row : data.rows()) {
    SparseVector scaled(row.dim());
    for (const auto& e : row.entries()) scaled.push_back(e.index, scaler.apply(e.index, e.value));
    out.push_back(std::move(scaled));
  }
  return out;
}

double dot(const std::vector<double>& w, const SparseVector& x) {
  double z = 0.0;
  for (const auto& e : x.entries()) z += w[e.index] * e.value;
  return z;
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

MaxAbsScaler MaxAbsScaler::fit(const Dataset& data) {
  std::vector<double> scale(data.dim(), 0.0);
  for (const auto& row : data.rows()) {
    for (const auto& e : row.entries()) scale[e.index] = std::max(scale[e.index], std::abs(e.value));
  }
  for (double& s : scale) {
    if (s == 0.0) s = 1.0;
  }
  return MaxAbsScaler(std::move(scale));
}

LogisticModel::LogisticModel(ModelSpec spec, MaxAbsScaler scaler, std::vector<double> weights,
                             double bias)
    : TrainedModel(std::move(spec), weights.size()),
      scaler_(std::move(scaler)),
      weights_(std::move(weights)),
      bias_(bias) {}

double LogisticModel::predict_unchecked(const SparseVector& x) const {
  double z = bias_;
  for (const auto& e : x.entries()) z += weights_[e.index] * scaler_.apply(e.index, e.value);
  return sigmoid(z);
}

void LogisticModel::write_parameters(std::ostream& out) const {
  detail::write_named_vector(out, "scale", scaler_.scale());
  detail::write_named_vector(out, "weights", weights_);
  out << "bias " << format_double(bias_) << '\n';
}

ModelPtr LogisticModel::read_parameters(ModelSpec spec, std::size_t dim, std::istream& in) {
  auto scale = detail::read_named_vector(in, "scale", dim);
  auto weights = detail::read_named_vector(in, "weights", dim);
  std::string word, value;
  if (!(in >> word >> value) || word != "bias") {
    throw Error(ErrorCode::kFormat, "logistic: expected 'bias <b>'");
  }
  return std::make_shared<LogisticModel>(std::move(spec), MaxAbsScaler(std::move(scale)),
                                         std::move(weights), parse_double(value));
}

ModelPtr train_logistic(const ModelSpec& spec, const Dataset& data) {
  const Hyperparameters& hp = spec.hyperparameters;
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const double inv_n = 1.0 / static_cast<double>(n);
  MaxAbsScaler scaler = MaxAbsScaler::fit(data);
  const auto rows = scale_rows(scaler, data);

  std::vector<double> w(d, 0.0), grad(d), trial(d);
  double b = 0.0;

  auto objective = [&](const std::vector<double>& weights, double bias) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = bias + dot(weights, rows[i]);
      total += data.label(i) ? softplus(-z) : softplus(z);
    }
    double norm = 0.0;
    for (double v : weights) norm += v * v;
    return total * inv_n + 0.5 * hp.l2 * inv_n * norm;
  };

  double loss = objective(w, b);
  double step = 1.0;
  for (int iter = 0; iter < hp.max_iter; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = (sigmoid(b + dot(w, rows[i])) - (data.label(i) ? 1.0 : 0.0)) * inv_n;
      grad_b += r;
      for (const auto& e : rows[i].entries()) grad[e.index] += r * e.value;
    }
    double grad_norm2 = grad_b * grad_b;
    for (std::size_t j = 0; j < d; ++j) {
      grad[j] += hp.l2 * inv_n * w[j];
      grad_norm2 += grad[j] * grad[j];
    }
    if (std::sqrt(grad_norm2) < hp.tolerance) break;

    step *= 2.0;
    double trial_b = 0.0;
    double trial_loss = 0.0;
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t j = 0; j < d; ++j) trial[j] = w[j] - step * grad[j];
      trial_b = b - step * grad_b;
      trial_loss = objective(trial, trial_b);
      if (trial_loss <= loss - 1e-4 * step * grad_norm2) break;
      step *= 0.5;
    }
    if (!(trial_loss < loss)) break;
    w.swap(trial);
    b = trial_b;
    loss = trial_loss;
  }
  return std::make_shared<LogisticModel>(spec, std::move(scaler), std::move(w), b);
}

}  // namespace vandalstack
