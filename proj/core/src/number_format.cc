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

#include "vandalstack/number_format.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "vandalstack/error.h"

namespace vandalstack {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kFormat, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_uint64(std::string_view text) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kFormat,
                "not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

std::int64_t parse_int64(std::string_view text) {
  std::int64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kFormat, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string format_score(double score) {
  constexpr int kSignificant = 9;
  if (!std::isfinite(score)) {
    throw Error(ErrorCode::kInvalidArgument, "cannot format non-finite score");
  }
  if (score == 0.0) return "0";
  const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(score))));
  int decimals = kSignificant - 1 - exponent;
  if (decimals < 0) decimals = 0;
  if (decimals > 340) decimals = 340;
  std::string out(512, '\0');
  auto [ptr, ec] = std::to_chars(out.data(), out.data() + out.size(), score,
                                 std::chars_format::fixed, decimals);
  out.resize(static_cast<std::size_t>(ptr - out.data()));
  return out;
}

std::string_view trim(std::string_view text) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

}  // namespace vandalstack
