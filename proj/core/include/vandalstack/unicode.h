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

#ifndef VANDALSTACK_UNICODE_H_
#define VANDALSTACK_UNICODE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vandalstack::unicode {

// Decodes UTF-8. Every byte that does not start a well-formed sequence is
// reported as U+FFFD on its own, so the result never fails.
std::vector<char32_t> decode_utf8(std::string_view text);

// Locale-independent character classes. The tables cover the scripts that
// show up in knowledge-base comments (Latin, Greek, Cyrillic, Armenian,
// Hebrew, Arabic, Indic, Thai, CJK, Hangul, fullwidth forms); code points
// outside them belong to no class.
struct CharClass {
  bool letter = false;
  bool upper = false;
  bool lower = false;
  bool digit = false;
  bool whitespace = false;
  bool punctuation = false;  // punctuation and symbols
  bool latin = false;        // letter of a Latin block

  bool alphanumeric() const { return letter || digit; }
};

CharClass classify(char32_t c);

// Simple one-to-one lower-casing for the cased ranges known to classify().
char32_t to_lower(char32_t c);

// Lower-cases a UTF-8 string with to_lower(); invalid bytes become U+FFFD.
std::string lower_utf8(std::string_view text);

void append_utf8(std::string& out, char32_t c);

}  // namespace vandalstack::unicode

#endif  // VANDALSTACK_UNICODE_H_
