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

#include "vandalstack/learners/mlp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"
#include "vandalstack/random.h"
#include "vector_io.h"

namespace vandalstack {

namespace {

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// Loss and gradient over rows[indices[k]]. pre holds hidden pre-activations.
double batch_loss(const MlpShape& shape, std::span<const double> params,
                  std::span<const SparseVector> rows, std::span<const std::uint8_t> labels,
                  std::span<const std::size_t> indices, double l2, std::span<double> gradient,
                  std::vector<double>& pre) {
  const std::size_t h = shape.hidden;
  const double inv_n = 1.0 / static_cast<double>(indices.size());
  const bool want_grad = !gradient.empty();
  if (want_grad) std::fill(gradient.begin(), gradient.end(), 0.0);
  pre.resize(h);
  double total = 0.0;
  for (std::size_t i : indices) {
    const SparseVector& x = rows[i];
    std::copy(params.begin() + static_cast<std::ptrdiff_t>(shape.b1(0)),
              params.begin() + static_cast<std::ptrdiff_t>(shape.b1(0) + h), pre.begin());
    for (const auto& e : x.entries()) {
      const double* w = params.data() + shape.w1(e.index, 0);
      for (std::size_t u = 0; u < h; ++u) pre[u] += e.value * w[u];
    }
    double z = params[shape.b2()];
    const double* w2 = params.data() + shape.w2(0);
    for (std::size_t u = 0; u < h; ++u) z += w2[u] * std::max(0.0, pre[u]);
    const bool y = labels[i] != 0;
    total += y ? softplus(-z) : softplus(z);
    if (!want_grad) continue;

    const double dz = (sigmoid(z) - (y ? 1.0 : 0.0)) * inv_n;
    gradient[shape.b2()] += dz;
    double* g_w2 = gradient.data() + shape.w2(0);
    double* g_b1 = gradient.data() + shape.b1(0);
    for (std::size_t u = 0; u < h; ++u) {
      if (pre[u] > 0.0) {
        g_w2[u] += dz * pre[u];
        const double dh = dz * w2[u];
        g_b1[u] += dh;
        pre[u] = dh;
      } else {
        pre[u] = 0.0;
      }
    }
    for (const auto& e : x.entries()) {
      double* g = gradient.data() + shape.w1(e.index, 0);
      for (std::size_t u = 0; u < h; ++u) g[u] += e.value * pre[u];
    }
  }
  double norm = 0.0;
  const std::size_t weight_end = shape.b1(0);
  for (std::size_t k = 0; k < weight_end; ++k) norm += params[k] * params[k];
  for (std::size_t u = 0; u < h; ++u) norm += params[shape.w2(u)] * params[shape.w2(u)];
  if (want_grad) {
    const double c = l2 * inv_n;
    for (std::size_t k = 0; k < weight_end; ++k) gradient[k] += c * params[k];
    for (std::size_t u = 0; u < h; ++u) gradient[shape.w2(u)] += c * params[shape.w2(u)];
  }
  return total * inv_n + 0.5 * l2 * inv_n * norm;
}

}  // namespace

double mlp_forward(const MlpShape& shape, std::span<const double> params, const SparseVector& x) {
  std::vector<double> pre(params.begin() + static_cast<std::ptrdiff_t>(shape.b1(0)),
                          params.begin() + static_cast<std::ptrdiff_t>(shape.b1(0) + shape.hidden));
  for (const auto& e : x.entries()) {
    const double* w = params.data() + shape.w1(e.index, 0);
    for (std::size_t u = 0; u < shape.hidden; ++u) pre[u] += e.value * w[u];
  }
  double z = params[shape.b2()];
  for (std::size_t u = 0; u < shape.hidden; ++u) {
    z += params[shape.w2(u)] * std::max(0.0, pre[u]);
  }
  return sigmoid(z);
}

double mlp_loss(const MlpShape& shape, std::span<const double> params,
                std::span<const SparseVector> rows, std::span<const std::uint8_t> labels,
                double l2, std::span<double> gradient) {
  if (params.size() != shape.parameter_count() ||
      (!gradient.empty() && gradient.size() != params.size()) || rows.size() != labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "mlp_loss: inconsistent sizes");
  }
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "mlp_loss: no rows");
  std::vector<std::size_t> indices(rows.size());
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  std::vector<double> pre;
  return batch_loss(shape, params, rows, labels, indices, l2, gradient, pre);
}

MlpModel::MlpModel(ModelSpec spec, MaxAbsScaler scaler, MlpShape shape, std::vector<double> params)
    : TrainedModel(std::move(spec), shape.inputs),
      scaler_(std::move(scaler)),
      shape_(shape),
      params_(std::move(params)) {}

double MlpModel::predict_unchecked(const SparseVector& x) const {
  SparseVector scaled(x.dim());
  for (const auto& e : x.entries()) scaled.push_back(e.index, scaler_.apply(e.index, e.value));
  return mlp_forward(shape_, params_, scaled);
}

void MlpModel::write_parameters(std::ostream& out) const {
  detail::write_named_vector(out, "scale", scaler_.scale());
  out << "hidden " << shape_.hidden << '\n';
  detail::write_named_vector(out, "params", params_);
}

ModelPtr MlpModel::read_parameters(ModelSpec spec, std::size_t dim, std::istream& in) {
  auto scale = detail::read_named_vector(in, "scale", dim);
  std::string word;
  MlpShape shape;
  shape.inputs = dim;
  if (!(in >> word >> shape.hidden) || word != "hidden" || shape.hidden == 0) {
    throw Error(ErrorCode::kFormat, "mlp: expected 'hidden <h>'");
  }
  auto params = detail::read_named_vector(in, "params", shape.parameter_count());
  return std::make_shared<MlpModel>(std::move(spec), MaxAbsScaler(std::move(scale)), shape,
                                    std::move(params));
}

ModelPtr train_mlp(const ModelSpec& spec, const Dataset& data) {
  const Hyperparameters& hp = spec.hyperparameters;
  const std::size_t n = data.size();
  MaxAbsScaler scaler = MaxAbsScaler::fit(data);
  std::vector<SparseVector> rows;
  rows.reserve(n);
  for (const auto& row : data.rows()) {
    SparseVector scaled(row.dim());
    for (const auto& e : row.entries()) scaled.push_back(e.index, scaler.apply(e.index, e.value));
    rows.push_back(std::move(scaled));
  }

  MlpShape shape{data.dim(), static_cast<std::size_t>(hp.hidden_units)};
  std::vector<double> params(shape.parameter_count(), 0.0);
  Rng rng(derive_seed(spec.seed, "mlp"));
  const double limit1 = std::sqrt(6.0 / static_cast<double>(shape.inputs + shape.hidden));
  const double limit2 = std::sqrt(6.0 / static_cast<double>(shape.hidden + 1));
  for (std::size_t k = 0; k < shape.b1(0); ++k) params[k] = rng.uniform(-limit1, limit1);
  for (std::size_t u = 0; u < shape.hidden; ++u) params[shape.w2(u)] = rng.uniform(-limit2, limit2);

  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEpsilon = 1e-8;
  std::vector<double> grad(params.size()), m(params.size(), 0.0), v(params.size(), 0.0), pre;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(hp.batch_size), n);
  double best = std::numeric_limits<double>::infinity();
  int stale = 0;
  std::uint64_t step = 0;
  for (int epoch = 0; epoch < hp.max_iter; ++epoch) {
    shuffle(std::span<std::size_t>(order), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t stop = std::min(n, start + batch);
      std::span<const std::size_t> idx(order.data() + start, stop - start);
      epoch_loss += batch_loss(shape, params, rows, data.labels(), idx, hp.l2, grad, pre) *
                    static_cast<double>(idx.size());
      ++step;
      const double correction = std::sqrt(1.0 - std::pow(kBeta2, static_cast<double>(step))) /
                                (1.0 - std::pow(kBeta1, static_cast<double>(step)));
      const double rate = hp.learning_rate * correction;
      for (std::size_t k = 0; k < params.size(); ++k) {
        m[k] = kBeta1 * m[k] + (1.0 - kBeta1) * grad[k];
        v[k] = kBeta2 * v[k] + (1.0 - kBeta2) * grad[k] * grad[k];
        params[k] -= rate * m[k] / (std::sqrt(v[k]) + kEpsilon);
      }
    }
    epoch_loss /= static_cast<double>(n);
    if (epoch_loss > best - hp.tolerance) {
      if (++stale >= hp.n_iter_no_change) break;
    } else {
      stale = 0;
    }
    best = std::min(best, epoch_loss);
  }
  return std::make_shared<MlpModel>(spec, std::move(scaler), shape, std::move(params));
}

}  // namespace vandalstack
