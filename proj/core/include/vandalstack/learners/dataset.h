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

#ifndef VANDALSTACK_LEARNERS_DATASET_H_
#define VANDALSTACK_LEARNERS_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vandalstack/sparse.h"

namespace vandalstack {

// Training rows and binary labels sharing one dimension.
class Dataset {
 public:
  Dataset() = default;
  // Throws Error(kDimensionMismatch) on inconsistent row dimensions or a
  // row/label count mismatch.
  Dataset(std::vector<SparseVector> rows, std::vector<std::uint8_t> labels);
  Dataset(std::size_t dim, std::vector<SparseVector> rows,
          std::vector<std::uint8_t> labels);

  std::size_t size() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  bool empty() const { return rows_.empty(); }

  std::span<const SparseVector> rows() const { return rows_; }
  std::span<const std::uint8_t> labels() const { return labels_; }
  const SparseVector& row(std::size_t i) const { return rows_[i]; }
  bool label(std::size_t i) const { return labels_[i] != 0; }

  std::size_t positive_count() const;

  Dataset subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t dim_ = 0;
  std::vector<SparseVector> rows_;
  std::vector<std::uint8_t> labels_;
};

// Column-major view of the non-zero entries, each column sorted by value
// (ties by row). Zeros are implicit.
class ColumnStore {
 public:
  struct Entry {
    double value;
    std::uint32_t row;
  };

  explicit ColumnStore(const Dataset& data);

  std::size_t dim() const { return offsets_.size() - 1; }
  std::size_t rows() const { return rows_; }
  std::span<const Entry> column(std::size_t j) const {
    return {entries_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
  }

 private:
  std::size_t rows_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

}  // namespace vandalstack

#endif  // VANDALSTACK_LEARNERS_DATASET_H_
