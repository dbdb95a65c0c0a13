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

#include "vandalstack/sparse.h"

#include <algorithm>
#include <bit>
#include <string>

#include "vandalstack/error.h"

namespace vandalstack {

SparseVector::SparseVector(std::size_t dim, std::vector<SparseEntry> entries)
    : dim_(dim) {
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  entries_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const SparseEntry& e = entries[i];
    if (e.index >= dim) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "sparse index " + std::to_string(e.index) +
                      " out of range for dimension " + std::to_string(dim));
    }
    if (i > 0 && entries[i - 1].index == e.index) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate sparse index " + std::to_string(e.index));
    }
    if (e.value != 0.0) entries_.push_back(e);
  }
}

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  SparseVector v(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    v.push_back(static_cast<std::uint32_t>(i), dense[i]);
  }
  return v;
}

double SparseVector::at(std::size_t index) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const SparseEntry& e, std::size_t i) { return e.index < i; });
  if (it != entries_.end() && it->index == index) return it->value;
  return 0.0;
}

void SparseVector::push_back(std::uint32_t index, double value) {
  if (index >= dim_ || (!entries_.empty() && entries_.back().index >= index)) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "sparse push_back out of order at index " + std::to_string(index));
  }
  if (value != 0.0) entries_.push_back({index, value});
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> dense(dim_, 0.0);
  for (const auto& e : entries_) dense[e.index] = e.value;
  return dense;
}

double squared_distance(const SparseVector& a, const SparseVector& b) {
  auto ea = a.entries();
  auto eb = b.entries();
  std::size_t i = 0, j = 0;
  double sum = 0.0;
  while (i < ea.size() || j < eb.size()) {
    double diff;
    if (j == eb.size() || (i < ea.size() && ea[i].index < eb[j].index)) {
      diff = ea[i++].value;
    } else if (i == ea.size() || eb[j].index < ea[i].index) {
      diff = eb[j++].value;
    } else {
      diff = ea[i++].value - eb[j++].value;
    }
    sum += diff * diff;
  }
  return sum;
}

std::size_t SparseVectorHash::operator()(const SparseVector& v) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.dim();
  for (const auto& e : v.entries()) {
    h ^= e.index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::bit_cast<std::uint64_t>(e.value) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace vandalstack
