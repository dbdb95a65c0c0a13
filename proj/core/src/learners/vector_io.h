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

#ifndef VANDALSTACK_SRC_LEARNERS_VECTOR_IO_H_
#define VANDALSTACK_SRC_LEARNERS_VECTOR_IO_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"

namespace vandalstack::detail {

// "<name> <count> v0 v1 ..." on one line.
inline void write_named_vector(std::ostream& out, std::string_view name,
                               const std::vector<double>& v) {
  out << name << ' ' << v.size();
  for (double x : v) out << ' ' << format_double(x);
  out << '\n';
}

inline std::vector<double> read_named_vector(std::istream& in, std::string_view name,
                                             std::size_t expected) {
  std::string word;
  std::size_t count = 0;
  if (!(in >> word >> count) || word != name || count != expected) {
    throw Error(ErrorCode::kFormat, "expected '" + std::string(name) + " " +
                                        std::to_string(expected) + "'");
  }
  std::vector<double> out(count);
  for (double& v : out) {
    if (!(in >> word)) throw Error(ErrorCode::kFormat, "truncated " + std::string(name));
    v = parse_double(word);
  }
  return out;
}

}  // namespace vandalstack::detail

#endif  // VANDALSTACK_SRC_LEARNERS_VECTOR_IO_H_
