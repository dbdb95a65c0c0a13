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

#ifndef VANDALSTACK_SPARSE_H_
#define VANDALSTACK_SPARSE_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace vandalstack {

struct SparseEntry {
  std::uint32_t index = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// A sparse real vector with strictly increasing indices and no stored zeros.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dim) : dim_(dim) {}

  // Builds from arbitrary entries: sorts, rejects duplicates and indices
  // >= dim, and drops explicit zeros.
  SparseVector(std::size_t dim, std::vector<SparseEntry> entries);
  SparseVector(std::size_t dim, std::initializer_list<SparseEntry> entries)
      : SparseVector(dim, std::vector<SparseEntry>(entries)) {}

  static SparseVector from_dense(std::span<const double> dense);

  std::size_t dim() const { return dim_; }
  std::span<const SparseEntry> entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  // Value at column index (0 when not stored). Binary search.
  double at(std::size_t index) const;

  // Appends an entry past the current last index. Zero values are ignored.
  void push_back(std::uint32_t index, double value);

  std::vector<double> to_dense() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<SparseEntry> entries_;
};

double squared_distance(const SparseVector& a, const SparseVector& b);

struct SparseVectorHash {
  std::size_t operator()(const SparseVector& v) const;
};

}  // namespace vandalstack

#endif  // VANDALSTACK_SPARSE_H_
