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

// Stand-in learners for stacking tests.

#ifndef VANDALSTACK_TESTS_SUPPORT_TEST_MODELS_H_
#define VANDALSTACK_TESTS_SUPPORT_TEST_MODELS_H_

#include <cstdint>
#include <memory>
#include <ostream>
#include <unordered_map>

#include "vandalstack/learners/dataset.h"
#include "vandalstack/learners/model.h"
#include "vandalstack/sparse.h"

namespace vandalstack::testing {

// Returns the stored training label of rows it was fit on, 0.5 for anything
// else.
class MemorizerModel final : public TrainedModel {
 public:
  MemorizerModel(const ModelSpec& spec, const Dataset& data) : TrainedModel(spec, data.dim()) {
    for (std::size_t i = 0; i < data.size(); ++i) seen_[data.row(i)] = data.label(i);
  }
  void write_parameters(std::ostream& out) const override { out << "memorizer\n"; }

 protected:
  double predict_unchecked(const SparseVector& x) const override {
    const auto it = seen_.find(x);
    return it == seen_.end() ? 0.5 : (it->second ? 1.0 : 0.0);
  }

 private:
  std::unordered_map<SparseVector, bool, SparseVectorHash> seen_;
};

class ConstantModel final : public TrainedModel {
 public:
  ConstantModel(const ModelSpec& spec, std::size_t dim, double value)
      : TrainedModel(spec, dim), value_(value) {}
  void write_parameters(std::ostream& out) const override { out << "constant\n"; }

 protected:
  double predict_unchecked(const SparseVector&) const override { return value_; }

 private:
  double value_;
};

inline ModelPtr train_memorizer(const ModelSpec& spec, const Dataset& data) {
  return std::make_shared<MemorizerModel>(spec, data);
}

// Rows with a distinct id in column 0 so the memorizer can tell them apart.
inline Dataset distinct_rows(std::size_t n, std::size_t dim = 3) {
  std::vector<SparseVector> rows;
  std::vector<std::uint8_t> labels;
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(SparseVector(dim, {{0, static_cast<double>(i + 1)},
                                      {1, static_cast<double>(i % 7)}}));
    labels.push_back(i % 3 == 0 ? 1 : 0);
  }
  return Dataset(dim, std::move(rows), std::move(labels));
}

}  // namespace vandalstack::testing

#endif  // VANDALSTACK_TESTS_SUPPORT_TEST_MODELS_H_
