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

#ifndef VANDALSTACK_LEARNERS_MLP_H_
#define VANDALSTACK_LEARNERS_MLP_H_

#include <cstddef>
#include <istream>
#include <span>
#include <vector>

#include "vandalstack/learners/linear.h"
#include "vandalstack/learners/model.h"

namespace vandalstack {

// One hidden ReLU layer and a logistic output unit. All parameters live in
// one flat vector laid out as
//   [ W1 (input-major: d blocks of h) | b1 (h) | w2 (h) | b2 (1) ]
// so that optimizers and gradient checks can treat them uniformly.
struct MlpShape {
  std::size_t inputs = 0;
  std::size_t hidden = 0;

  std::size_t parameter_count() const { return inputs * hidden + 2 * hidden + 1; }
  std::size_t w1(std::size_t input, std::size_t unit) const { return input * hidden + unit; }
  std::size_t b1(std::size_t unit) const { return inputs * hidden + unit; }
  std::size_t w2(std::size_t unit) const { return inputs * hidden + hidden + unit; }
  std::size_t b2() const { return inputs * hidden + 2 * hidden; }
};

double mlp_forward(const MlpShape& shape, std::span<const double> params,
                   const SparseVector& x);

// Mean log-loss over the rows plus l2 / (2 n) * |W|^2 (weights only, not
// biases). Inputs are used as given; callers scale them first. When
// gradient is non-empty it receives d(loss)/d(params) by backpropagation.
double mlp_loss(const MlpShape& shape, std::span<const double> params,
                std::span<const SparseVector> rows, std::span<const std::uint8_t> labels,
                double l2, std::span<double> gradient = {});

class MlpModel final : public TrainedModel {
 public:
  MlpModel(ModelSpec spec, MaxAbsScaler scaler, MlpShape shape,
           std::vector<double> params);

  const MlpShape& shape() const { return shape_; }
  const std::vector<double>& parameters() const { return params_; }
  const MaxAbsScaler& scaler() const { return scaler_; }

  void write_parameters(std::ostream& out) const override;
  static ModelPtr read_parameters(ModelSpec spec, std::size_t dim, std::istream& in);

 protected:
  double predict_unchecked(const SparseVector& x) const override;

 private:
  MaxAbsScaler scaler_;
  MlpShape shape_;
  std::vector<double> params_;
};

// Glorot-uniform initialization, mini-batch Adam (beta 0.9 / 0.999,
// epsilon 1e-8) with step hp.learning_rate, per-epoch reshuffling, and early
// stopping once the epoch loss fails to improve on the best by
// hp.tolerance for hp.n_iter_no_change consecutive epochs.
ModelPtr train_mlp(const ModelSpec& spec, const Dataset& data);

}  // namespace vandalstack

#endif  // VANDALSTACK_LEARNERS_MLP_H_
