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

#ifndef VANDALSTACK_WORD_LISTS_H_
#define VANDALSTACK_WORD_LISTS_H_

#include <string_view>

namespace vandalstack::word_lists {

// Contents of core/data/language_words.txt: one lower-case language name or
// ISO 639-1 code per line.
std::string_view language_words_text();

// Contents of core/data/latin_script_languages.txt: ISO 639-1 codes of
// languages conventionally written in Latin script.
std::string_view latin_script_languages_text();

}  // namespace vandalstack::word_lists

#endif  // VANDALSTACK_WORD_LISTS_H_
