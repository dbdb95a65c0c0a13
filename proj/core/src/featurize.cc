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

#include "vandalstack/featurize.h"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"
#include "vandalstack/unicode.h"
#include "vandalstack/word_lists.h"

namespace vandalstack {
namespace {

constexpr std::string_view kNumericNames[kNumericFeatureCount] = {
    "lowerCaseRatio",     "upperCaseRatio",    "nonLatinRatio",
    "latinRatio",         "alphanumericRatio", "digitRatio",
    "punctuationRatio",   "whitespaceRatio",   "longestCharSeq",
    "langWordRatio",      "lowerCaseWordRatio", "containsURL",
    "containsLangWord",   "longestWord",       "upperCaseWordRatio",
    "commentLength",      "containsHashTag",   "isSpecContriUser",
    "isRegisteredUser",   "isLatinLanguage",   "hasContributor",
};

constexpr std::string_view kCategoricalNames[kCategoricalFeatureCount] = {
    "userCountry", "userTimeZone",     "userCity",       "userCounty",
    "userRegion",  "userContinent",    "revisionTag",    "revisionLanguage",
    "revisionAction", "revisionSubaction",
};

std::unordered_set<std::string> parse_word_list(std::string_view text) {
  std::unordered_set<std::string> words;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    if (!line.empty() && line.front() != '#') words.emplace(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return words;
}

const std::unordered_set<std::string>& language_words() {
  static const auto words = parse_word_list(word_lists::language_words_text());
  return words;
}

const std::unordered_set<std::string>& latin_languages() {
  static const auto words = parse_word_list(word_lists::latin_script_languages_text());
  return words;
}

bool contains_ascii_ci(std::string_view haystack, std::string_view needle) {
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                        [](char a, char b) {
                          const auto lower = [](char c) {
                            return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c;
                          };
                          return lower(a) == lower(b);
                        });
  return it != haystack.end();
}

// Start of the first "#" immediately followed by an alphanumeric character,
// as an index into cps.
std::optional<std::size_t> first_hashtag(const std::vector<char32_t>& cps) {
  for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
    if (cps[i] == U'#' && unicode::classify(cps[i + 1]).alphanumeric()) return i;
  }
  return std::nullopt;
}

std::string escape_field(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_field(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\') {
      out += text[i];
      continue;
    }
    if (++i == text.size()) throw Error(ErrorCode::kFormat, "dangling escape in schema");
    switch (text[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: throw Error(ErrorCode::kFormat, "unknown escape in schema");
    }
  }
  return out;
}

}  // namespace

std::string_view feature_name(NumericFeature f) {
  return kNumericNames[static_cast<std::size_t>(f)];
}

std::string_view feature_name(CategoricalFeature f) {
  return kCategoricalNames[static_cast<std::size_t>(f)];
}

bool is_language_word(std::string_view lower_word) {
  const auto& words = language_words();
  return words.find(std::string(lower_word)) != words.end();
}

bool is_latin_script_language(std::string_view code) {
  const auto& codes = latin_languages();
  return codes.find(std::string(code)) != codes.end();
}

CommentHeader parse_comment_header(std::string_view comment) {
  CommentHeader header;
  if (!comment.starts_with("/*")) return header;
  const std::size_t close = comment.find("*/", 2);
  if (close == std::string_view::npos) return header;
  const std::string_view inner = trim(comment.substr(2, close - 2));
  const std::size_t colon = inner.find(':');
  const std::string_view token = trim(inner.substr(0, colon));
  if (token.empty()) return header;

  const std::size_t dash = token.find('-');
  header.action = std::string(token.substr(0, dash));
  if (header.action->empty()) header.action.reset();
  if (dash != std::string_view::npos && dash + 1 < token.size()) {
    header.subaction = std::string(token.substr(dash + 1));
  }

  if (colon != std::string_view::npos) {
    const std::string_view params = inner.substr(colon + 1);
    const std::size_t bar = params.rfind('|');
    if (bar != std::string_view::npos) {
      const std::string_view last = trim(params.substr(bar + 1));
      const bool letters = std::all_of(last.begin(), last.end(),
                                       [](char c) { return c >= 'a' && c <= 'z'; });
      if (letters && last.size() >= 2 && last.size() <= 3) header.language = std::string(last);
    }
  }
  return header;
}

RawFeatures extract_content(std::string_view comment) {
  using NF = NumericFeature;
  RawFeatures raw;
  const std::vector<char32_t> cps = unicode::decode_utf8(comment);
  const std::size_t n = cps.size();

  std::size_t lower = 0, upper = 0, digits = 0, punct = 0, space = 0, alnum = 0;
  std::size_t letters = 0, latin = 0;
  std::size_t longest_run = 0, run = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const unicode::CharClass cc = unicode::classify(cps[i]);
    lower += cc.lower;
    upper += cc.upper;
    digits += cc.digit;
    punct += cc.punctuation;
    space += cc.whitespace;
    alnum += cc.alphanumeric();
    letters += cc.letter;
    latin += cc.latin;
    run = (i > 0 && cps[i] == cps[i - 1]) ? run + 1 : 1;
    longest_run = std::max(longest_run, run);
  }

  std::size_t words = 0, cased_words = 0, lower_words = 0, upper_words = 0;
  std::size_t lang_words = 0, longest_word = 0;
  for (std::size_t i = 0; i < n;) {
    if (unicode::classify(cps[i]).whitespace) {
      ++i;
      continue;
    }
    std::size_t end = i;
    bool has_letter = false, has_upper = false, has_lower = false;
    while (end < n) {
      const unicode::CharClass cc = unicode::classify(cps[end]);
      if (cc.whitespace) break;
      has_letter |= cc.letter;
      has_upper |= cc.upper;
      has_lower |= cc.lower;
      ++end;
    }
    ++words;
    longest_word = std::max(longest_word, end - i);
    if (has_letter) {
      ++cased_words;
      if (has_lower && !has_upper) ++lower_words;
      if (has_upper && !has_lower) ++upper_words;
    }
    // Language lookup ignores surrounding punctuation: "English," counts.
    std::size_t lo = i, hi = end;
    while (lo < hi && unicode::classify(cps[lo]).punctuation) ++lo;
    while (hi > lo && unicode::classify(cps[hi - 1]).punctuation) --hi;
    if (lo < hi) {
      std::string word;
      for (std::size_t k = lo; k < hi; ++k) unicode::append_utf8(word, unicode::to_lower(cps[k]));
      if (is_language_word(word)) ++lang_words;
    }
    i = end;
  }

  const auto ratio = [](std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
  };
  raw[NF::kLowerCaseRatio] = ratio(lower, n);
  raw[NF::kUpperCaseRatio] = ratio(upper, n);
  raw[NF::kDigitRatio] = ratio(digits, n);
  raw[NF::kPunctuationRatio] = ratio(punct, n);
  raw[NF::kWhitespaceRatio] = ratio(space, n);
  raw[NF::kAlphanumericRatio] = ratio(alnum, n);
  raw[NF::kLatinRatio] = ratio(latin, letters);
  raw[NF::kNonLatinRatio] = letters == 0 ? 0.0 : 1.0 - raw[NF::kLatinRatio];
  raw[NF::kLongestCharSeq] = static_cast<double>(longest_run);
  raw[NF::kLongestWord] = static_cast<double>(longest_word);
  raw[NF::kLowerCaseWordRatio] = ratio(lower_words, cased_words);
  raw[NF::kUpperCaseWordRatio] = ratio(upper_words, cased_words);
  raw[NF::kLangWordRatio] = ratio(lang_words, words);
  raw[NF::kContainsLangWord] = lang_words > 0 ? 1.0 : 0.0;
  raw[NF::kContainsUrl] = (contains_ascii_ci(comment, "http://") ||
                           contains_ascii_ci(comment, "https://") ||
                           contains_ascii_ci(comment, "www."))
                              ? 1.0
                              : 0.0;
  raw[NF::kContainsHashTag] = first_hashtag(cps) ? 1.0 : 0.0;
  raw[NF::kIsSpecContriUser] =
      comment.find("[[Special:Contributions/") != std::string_view::npos ? 1.0 : 0.0;
  raw[NF::kCommentLength] = static_cast<double>(n);
  return raw;
}

RawFeatures extract_context(const Revision& rev) {
  using CF = CategoricalFeature;
  using NF = NumericFeature;
  RawFeatures raw;
  raw[CF::kUserCountry] = rev.country;
  raw[CF::kUserContinent] = rev.continent;
  raw[CF::kUserTimeZone] = rev.timezone;
  raw[CF::kUserRegion] = rev.region;
  raw[CF::kUserCity] = rev.city;
  raw[CF::kUserCounty] = rev.county;

  CommentHeader header = parse_comment_header(rev.comment);
  raw[CF::kRevisionAction] = std::move(header.action);
  raw[CF::kRevisionSubaction] = std::move(header.subaction);
  raw[CF::kRevisionLanguage] = header.language;

  const std::vector<char32_t> cps = unicode::decode_utf8(rev.comment);
  if (auto start = first_hashtag(cps)) {
    std::string tag;
    for (std::size_t i = *start + 1; i < cps.size(); ++i) {
      if (!unicode::classify(cps[i]).alphanumeric() && cps[i] != U'_') break;
      unicode::append_utf8(tag, cps[i]);
    }
    raw[CF::kRevisionTag] = std::move(tag);
  }

  raw[NF::kIsRegisteredUser] = rev.registered ? 1.0 : 0.0;
  raw[NF::kIsLatinLanguage] =
      header.language && is_latin_script_language(*header.language) ? 1.0 : 0.0;
  raw[NF::kHasContributor] = rev.has_contributor ? 1.0 : 0.0;
  return raw;
}

RawFeatures extract_features(const Revision& rev) {
  RawFeatures raw = extract_content(rev.comment);
  RawFeatures context = extract_context(rev);
  // Content and context write disjoint slots.
  for (std::size_t i = 0; i < kNumericFeatureCount; ++i) raw.numeric[i] += context.numeric[i];
  raw.categorical = std::move(context.categorical);
  return raw;
}

FeatureSchema::FeatureSchema(std::vector<std::string> numeric_names,
                             std::vector<VocabEntry> categorical_vocab)
    : numeric_names_(std::move(numeric_names)), vocab_(std::move(categorical_vocab)) {
  std::set<std::string_view> seen;
  for (const auto& name : numeric_names_) {
    if (name.empty() || !seen.insert(name).second) {
      throw Error(ErrorCode::kFormat, "empty or duplicate numeric feature '" + name + "'");
    }
  }
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (i > 0 && !(vocab_[i - 1] < vocab_[i])) {
      throw Error(ErrorCode::kFormat, "categorical vocabulary not strictly sorted at '" +
                                          vocab_[i].first + "=" + vocab_[i].second + "'");
    }
    index_[vocab_[i].first].emplace(vocab_[i].second, numeric_names_.size() + i);
  }
}

std::optional<std::size_t> FeatureSchema::column(std::string_view feature,
                                                 std::string_view value) const {
  auto f = index_.find(feature);
  if (f == index_.end()) return std::nullopt;
  auto v = f->second.find(value);
  if (v == f->second.end()) return std::nullopt;
  return v->second;
}

std::string FeatureSchema::column_name(std::size_t column) const {
  if (column < numeric_names_.size()) return numeric_names_[column];
  const auto& [feature, value] = vocab_.at(column - numeric_names_.size());
  return feature + "=" + value;
}

void FeatureSchema::save(std::ostream& out) const {
  out << kSchemaHeader << '\n';
  for (const auto& name : numeric_names_) out << "N " << escape_field(name) << '\n';
  for (const auto& [feature, value] : vocab_) {
    out << "C " << escape_field(feature) << '\t' << escape_field(value) << '\n';
  }
}

FeatureSchema FeatureSchema::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSchemaHeader) {
    throw Error(ErrorCode::kFormat, "missing schema header '" + std::string(kSchemaHeader) + "'");
  }
  std::vector<std::string> numeric;
  std::vector<VocabEntry> vocab;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.starts_with("N ")) {
      if (!vocab.empty()) throw Error(ErrorCode::kFormat, "numeric feature after vocabulary");
      numeric.push_back(unescape_field(std::string_view(line).substr(2)));
    } else if (line.starts_with("C ")) {
      const std::string_view body = std::string_view(line).substr(2);
      const std::size_t tab = body.find('\t');
      if (tab == std::string_view::npos) {
        throw Error(ErrorCode::kFormat, "vocabulary line without TAB: '" + line + "'");
      }
      vocab.emplace_back(unescape_field(body.substr(0, tab)),
                         unescape_field(body.substr(tab + 1)));
    } else {
      throw Error(ErrorCode::kFormat, "unexpected schema line '" + line + "'");
    }
  }
  return FeatureSchema(std::move(numeric), std::move(vocab));
}

FeatureSchema build_schema(std::span<const RawFeatures> dataset) {
  if (dataset.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "cannot build a schema from an empty dataset");
  }
  std::set<FeatureSchema::VocabEntry> pairs;
  for (const auto& raw : dataset) {
    for (std::size_t f = 0; f < kCategoricalFeatureCount; ++f) {
      if (raw.categorical[f]) pairs.emplace(std::string(kCategoricalNames[f]), *raw.categorical[f]);
    }
  }
  std::vector<std::string> numeric(std::begin(kNumericNames), std::end(kNumericNames));
  return FeatureSchema(std::move(numeric), {pairs.begin(), pairs.end()});
}

SparseVector encode(const RawFeatures& raw, const FeatureSchema& schema) {
  const auto& names = schema.numeric_names();
  SparseVector out(schema.total_dim());
  for (std::size_t k = 0; k < names.size(); ++k) {
    // Standard schemas list the numeric features in enum order; anything
    // else cannot be produced from RawFeatures.
    if (k >= kNumericFeatureCount || names[k] != kNumericNames[k]) {
      throw Error(ErrorCode::kFormat,
                  "schema numeric column '" + names[k] + "' is not a raw feature");
    }
    out.push_back(static_cast<std::uint32_t>(k), raw.numeric[k]);
  }
  std::vector<std::uint32_t> hot;
  for (std::size_t f = 0; f < kCategoricalFeatureCount; ++f) {
    if (!raw.categorical[f]) continue;
    if (auto col = schema.column(kCategoricalNames[f], *raw.categorical[f])) {
      hot.push_back(static_cast<std::uint32_t>(*col));
    }
  }
  std::sort(hot.begin(), hot.end());
  for (std::uint32_t col : hot) out.push_back(col, 1.0);
  return out;
}

}  // namespace vandalstack
