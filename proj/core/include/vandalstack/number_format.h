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

#ifndef VANDALSTACK_NUMBER_FORMAT_H_
#define VANDALSTACK_NUMBER_FORMAT_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace vandalstack {

// Shortest decimal text that parses back to the identical double.
std::string format_double(double value);

// Strict parse of a whole string as a double / unsigned integer. Throws
// Error(kFormat) with the offending text on failure.
double parse_double(std::string_view text);
std::uint64_t parse_uint64(std::string_view text);
std::int64_t parse_int64(std::string_view text);

// Probability formatting shared by offline prediction and the streaming
// protocol: 9 significant digits, '.' separator, never an exponent.
std::string format_score(double score);

std::string_view trim(std::string_view text);

}  // namespace vandalstack

#endif  // VANDALSTACK_NUMBER_FORMAT_H_
