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

#ifndef VANDALSTACK_LEARNERS_LINEAR_H_
#define VANDALSTACK_LEARNERS_LINEAR_H_

#include <istream>
#include <span>
#include <vector>

#include "vandalstack/learners/model.h"

namespace vandalstack {

// Per-column max-abs scaling. It keeps sparse rows sparse, and it is the
// input normalization of the gradient-trained families.
class MaxAbsScaler {
 public:
  MaxAbsScaler() = default;
  explicit MaxAbsScaler(std::vector<double> scale) : scale_(std::move(scale)) {}

  static MaxAbsScaler fit(const Dataset& data);

  const std::vector<double>& scale() const { return scale_; }
  double apply(std::size_t column, double value) const {
    return value / scale_[column];
  }

 private:
  std::vector<double> scale_;
};

// L2-regularized logistic regression on max-abs scaled inputs. Minimizes
//   mean log-loss + l2 / (2 n) * |w|^2       (bias unpenalized)
// by full-batch gradient descent with Armijo backtracking, stopping when the
// gradient norm drops below hp.tolerance or after hp.max_iter iterations.
class LogisticModel final : public TrainedModel {
 public:
  LogisticModel(ModelSpec spec, MaxAbsScaler scaler, std::vector<double> weights,
                double bias);

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

  void write_parameters(std::ostream& out) const override;
  static ModelPtr read_parameters(ModelSpec spec, std::size_t dim, std::istream& in);

 protected:
  double predict_unchecked(const SparseVector& x) const override;

 private:
  MaxAbsScaler scaler_;
  std::vector<double> weights_;
  double bias_;
};

ModelPtr train_logistic(const ModelSpec& spec, const Dataset& data);

double sigmoid(double z);

}  // namespace vandalstack

#endif  // VANDALSTACK_LEARNERS_LINEAR_H_
