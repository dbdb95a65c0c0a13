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

#ifndef VANDALSTACK_FEATURIZE_H_
#define VANDALSTACK_FEATURIZE_H_

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vandalstack/corpus.h"
#include "vandalstack/sparse.h"

namespace vandalstack {

// Numeric raw features, in schema column order.
enum class NumericFeature : std::size_t {
  kLowerCaseRatio,
  kUpperCaseRatio,
  kNonLatinRatio,
  kLatinRatio,
  kAlphanumericRatio,
  kDigitRatio,
  kPunctuationRatio,
  kWhitespaceRatio,
  kLongestCharSeq,
  kLangWordRatio,
  kLowerCaseWordRatio,
  kContainsUrl,
  kContainsLangWord,
  kLongestWord,
  kUpperCaseWordRatio,
  kCommentLength,
  kContainsHashTag,
  kIsSpecContriUser,
  kIsRegisteredUser,
  kIsLatinLanguage,
  kHasContributor,
  kCount,
};

enum class CategoricalFeature : std::size_t {
  kUserCountry,
  kUserTimeZone,
  kUserCity,
  kUserCounty,
  kUserRegion,
  kUserContinent,
  kRevisionTag,
  kRevisionLanguage,
  kRevisionAction,
  kRevisionSubaction,
  kCount,
};

inline constexpr std::size_t kNumericFeatureCount =
    static_cast<std::size_t>(NumericFeature::kCount);
inline constexpr std::size_t kCategoricalFeatureCount =
    static_cast<std::size_t>(CategoricalFeature::kCount);

std::string_view feature_name(NumericFeature f);
std::string_view feature_name(CategoricalFeature f);

struct RawFeatures {
  std::array<double, kNumericFeatureCount> numeric{};
  std::array<std::optional<std::string>, kCategoricalFeatureCount> categorical;

  double& operator[](NumericFeature f) {
    return numeric[static_cast<std::size_t>(f)];
  }
  double operator[](NumericFeature f) const {
    return numeric[static_cast<std::size_t>(f)];
  }
  std::optional<std::string>& operator[](CategoricalFeature f) {
    return categorical[static_cast<std::size_t>(f)];
  }
  const std::optional<std::string>& operator[](CategoricalFeature f) const {
    return categorical[static_cast<std::size_t>(f)];
  }

  friend bool operator==(const RawFeatures&, const RawFeatures&) = default;
};

struct CommentHeader {
  std::optional<std::string> action;
  std::optional<std::string> subaction;
  std::optional<std::string> language;

  friend bool operator==(const CommentHeader&, const CommentHeader&) = default;
};

// Parses a leading "/* action-subaction:params */" block. The token before
// the first ':' splits on its first '-'; the last '|'-separated parameter is
// the language when it is 2-3 ASCII lower-case letters.
CommentHeader parse_comment_header(std::string_view comment);

// Content features of the comment text: the character and word statistics,
// commentLength, containsHashTag and isSpecContriUser. Context slots stay
// zero / missing.
RawFeatures extract_content(std::string_view comment);

// Context features of the revision: user geo fields, header-derived
// categoricals, revisionTag, isRegisteredUser, isLatinLanguage and
// hasContributor. Content slots stay zero.
RawFeatures extract_context(const Revision& revision);

// extract_content(comment) merged with extract_context(revision).
RawFeatures extract_features(const Revision& revision);

bool is_language_word(std::string_view lower_word);
bool is_latin_script_language(std::string_view code);

// Numeric columns followed by one-hot columns for every (feature, value)
// pair, sorted by (feature name, value) byte-wise. Nothing is hash-derived,
// so two processes that build from the same rows agree bit for bit.
class FeatureSchema {
 public:
  using VocabEntry = std::pair<std::string, std::string>;

  FeatureSchema() = default;
  // Validates ordering and uniqueness; throws Error(kFormat).
  FeatureSchema(std::vector<std::string> numeric_names,
                std::vector<VocabEntry> categorical_vocab);

  const std::vector<std::string>& numeric_names() const { return numeric_names_; }
  const std::vector<VocabEntry>& categorical_vocab() const { return vocab_; }
  std::size_t total_dim() const { return numeric_names_.size() + vocab_.size(); }

  // Column of a (feature, value) pair, if in the vocabulary.
  std::optional<std::size_t> column(std::string_view feature,
                                    std::string_view value) const;

  // Human readable name of a column ("userCountry=GB" for one-hot columns).
  std::string column_name(std::size_t column) const;

  void save(std::ostream& out) const;
  static FeatureSchema load(std::istream& in);

  friend bool operator==(const FeatureSchema& a, const FeatureSchema& b) {
    return a.numeric_names_ == b.numeric_names_ && a.vocab_ == b.vocab_;
  }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  using ValueIndex =
      std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>>;

  std::vector<std::string> numeric_names_;
  std::vector<VocabEntry> vocab_;
  std::unordered_map<std::string, ValueIndex, StringHash, std::equal_to<>> index_;
};

inline constexpr std::string_view kSchemaHeader = "vandalstack-schema v1";

// Schema over the standard raw features. Throws Error(kEmptyDataset).
FeatureSchema build_schema(std::span<const RawFeatures> dataset);

// Numeric block verbatim (zeros omitted), then a 1 in the column of every
// in-vocabulary categorical value. Unseen and missing values encode to zeros.
SparseVector encode(const RawFeatures& raw, const FeatureSchema& schema);

}  // namespace vandalstack

#endif  // VANDALSTACK_FEATURIZE_H_
