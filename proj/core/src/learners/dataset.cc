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

#include "vandalstack/learners/dataset.h"

#include <algorithm>
#include <string>

#include "vandalstack/error.h"

namespace vandalstack {

Dataset::Dataset(std::vector<SparseVector> rows, std::vector<std::uint8_t> labels)
    : Dataset(0, {}, {}) {
  const std::size_t dim = rows.empty() ? 0 : rows.front().dim();
  *this = Dataset(dim, std::move(rows), std::move(labels));
}

Dataset::Dataset(std::size_t dim, std::vector<SparseVector> rows,
                 std::vector<std::uint8_t> labels)
    : dim_(dim), rows_(std::move(rows)), labels_(std::move(labels)) {
  if (rows_.size() != labels_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(rows_.size()) + " rows but " +
                    std::to_string(labels_.size()) + " labels");
  }
  for (const auto& row : rows_) {
    if (row.dim() != dim_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row of dimension " + std::to_string(row.dim()) +
                      " in a dataset of dimension " + std::to_string(dim_));
    }
  }
}

std::size_t Dataset::positive_count() const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), 1));
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<SparseVector> rows;
  std::vector<std::uint8_t> labels;
  rows.reserve(indices.size());
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    rows.push_back(rows_.at(i));
    labels.push_back(labels_[i]);
  }
  return Dataset(dim_, std::move(rows), std::move(labels));
}

ColumnStore::ColumnStore(const Dataset& data) : rows_(data.size()) {
  const std::size_t d = data.dim();
  offsets_.assign(d + 1, 0);
  for (const auto& row : data.rows()) {
    for (const auto& e : row.entries()) ++offsets_[e.index + 1];
  }
  for (std::size_t j = 0; j < d; ++j) offsets_[j + 1] += offsets_[j];
  entries_.resize(offsets_[d]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (const auto& e : data.row(r).entries()) {
      entries_[cursor[e.index]++] = {e.value, static_cast<std::uint32_t>(r)};
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    std::sort(entries_.begin() + static_cast<std::ptrdiff_t>(offsets_[j]),
              entries_.begin() + static_cast<std::ptrdiff_t>(offsets_[j + 1]),
              [](const Entry& a, const Entry& b) {
                return a.value < b.value || (a.value == b.value && a.row < b.row);
              });
  }
}

}  // namespace vandalstack
