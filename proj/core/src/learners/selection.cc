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

#include <string>

#include "vandalstack/error.h"
#include "vandalstack/learners/model.h"

namespace vandalstack {

std::vector<std::size_t> select_features(const ImportanceReport& report, double threshold) {
  if (!(threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "selection threshold must be non-negative");
  }
  std::vector<std::size_t> selected;
  for (std::size_t j = 0; j < report.importances.size(); ++j) {
    if (report.importances[j] >= threshold) selected.push_back(j);
  }
  return selected;
}

SparseVector project(const SparseVector& x, std::span<const std::size_t> selected) {
  SparseVector out(selected.size());
  auto entries = x.entries();
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const std::size_t column = selected[k];
    if (column >= x.dim()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "selected column " + std::to_string(column) + " outside dimension " +
                      std::to_string(x.dim()));
    }
    if (k > 0 && column <= selected[k - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "selected columns must be strictly ascending");
    }
    while (cursor < entries.size() && entries[cursor].index < column) ++cursor;
    if (cursor < entries.size() && entries[cursor].index == column) {
      out.push_back(static_cast<std::uint32_t>(k), entries[cursor].value);
    }
  }
  return out;
}

}  // namespace vandalstack
