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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "vandalstack/corpus.h"
#include "vandalstack/error.h"
#include "vandalstack/featurize.h"
#include "vandalstack/random.h"

namespace vandalstack {
namespace {

using NF = NumericFeature;
using CF = CategoricalFeature;

constexpr const char* kMergedLine =
    "308612969\t/* wbsetclaim-create:2||1 */ [[Property:P800]]: [[Q5974487]]\t1\t"
    "0,GB,EU,GMT,EN,LEEDS,WEST YORKSHIRE,";

TEST(ExtractContentTest, HelloWorld) {
  const RawFeatures f = extract_content("Hello WORLD 123");
  EXPECT_EQ(f[NF::kCommentLength], 15);
  EXPECT_DOUBLE_EQ(f[NF::kLowerCaseRatio], 4.0 / 15);
  EXPECT_DOUBLE_EQ(f[NF::kUpperCaseRatio], 6.0 / 15);
  EXPECT_DOUBLE_EQ(f[NF::kDigitRatio], 3.0 / 15);
  EXPECT_DOUBLE_EQ(f[NF::kWhitespaceRatio], 2.0 / 15);
  EXPECT_DOUBLE_EQ(f[NF::kAlphanumericRatio], 13.0 / 15);
  EXPECT_EQ(f[NF::kPunctuationRatio], 0);
  EXPECT_EQ(f[NF::kLatinRatio], 1);
  EXPECT_EQ(f[NF::kNonLatinRatio], 0);
  EXPECT_EQ(f[NF::kLongestWord], 5);
  // "ll" in Hello is a run of two identical characters.
  EXPECT_EQ(f[NF::kLongestCharSeq], 2);
  EXPECT_EQ(f[NF::kLowerCaseWordRatio], 0);
  EXPECT_DOUBLE_EQ(f[NF::kUpperCaseWordRatio], 0.5);
  EXPECT_EQ(f[NF::kContainsUrl], 0);
}

TEST(ExtractContentTest, EmptyCommentIsAllZero) {
  const RawFeatures f = extract_content("");
  for (double v : f.numeric) EXPECT_EQ(v, 0.0);
  for (const auto& c : f.categorical) EXPECT_FALSE(c.has_value());
}

TEST(ExtractContentTest, TableTwoTriggers) {
  const RawFeatures f = extract_content("see www.example.com #autolist2 [[Special:Contributions/abcd]]");
  EXPECT_EQ(f[NF::kContainsUrl], 1);
  EXPECT_EQ(f[NF::kContainsHashTag], 1);
  EXPECT_EQ(f[NF::kIsSpecContriUser], 1);
}

TEST(ExtractContentTest, DetectorEdgeCases) {
  EXPECT_EQ(extract_content("HTTPS://x.org")[NF::kContainsUrl], 1);
  EXPECT_EQ(extract_content("# not a tag")[NF::kContainsHashTag], 0);
  EXPECT_EQ(extract_content("issue#7")[NF::kContainsHashTag], 1);
  EXPECT_EQ(extract_content("[[Special:Contribs/x]]")[NF::kIsSpecContriUser], 0);
}

TEST(ExtractContentTest, NonLatinAndLanguageWords) {
  const RawFeatures f = extract_content("Привет abc English, german");
  EXPECT_EQ(f[NF::kCommentLength], 26);
  EXPECT_DOUBLE_EQ(f[NF::kLatinRatio], 16.0 / 22);
  EXPECT_DOUBLE_EQ(f[NF::kNonLatinRatio], 1.0 - 16.0 / 22);
  EXPECT_DOUBLE_EQ(f[NF::kLangWordRatio], 0.5);
  EXPECT_EQ(f[NF::kContainsLangWord], 1);
  EXPECT_DOUBLE_EQ(f[NF::kLowerCaseWordRatio], 2.0 / 4);
}

TEST(ExtractContentTest, RatiosStayInRangeOnRandomText) {
  const std::vector<std::string> pool{"a", "B", "7", " ", "!", "é", "Ж", "中", "\t", "#", "w", "ww."};
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const auto len = rng.uniform_below(40);
    for (std::uint64_t k = 0; k < len; ++k) text += pool[rng.uniform_below(pool.size())];
    const RawFeatures f = extract_content(text);
    for (NF r : {NF::kLowerCaseRatio, NF::kUpperCaseRatio, NF::kNonLatinRatio, NF::kLatinRatio,
                 NF::kAlphanumericRatio, NF::kDigitRatio, NF::kPunctuationRatio,
                 NF::kWhitespaceRatio, NF::kLangWordRatio, NF::kLowerCaseWordRatio,
                 NF::kUpperCaseWordRatio}) {
      ASSERT_GE(f[r], 0.0) << text;
      ASSERT_LE(f[r], 1.0) << text;
    }
    ASSERT_LE(f[NF::kLongestCharSeq], f[NF::kCommentLength]);
    ASSERT_LE(f[NF::kLongestWord], f[NF::kCommentLength]);
  }
}

TEST(CommentHeaderTest, Examples) {
  EXPECT_EQ(parse_comment_header("/* wbsetclaim-create:2||1 */ [[Property:P800]]"),
            (CommentHeader{"wbsetclaim", "create", std::nullopt}));
  EXPECT_EQ(parse_comment_header("/* wbsetlabel-add:1|en */ x"),
            (CommentHeader{"wbsetlabel", "add", "en"}));
  EXPECT_EQ(parse_comment_header("free text comment"), CommentHeader{});
  EXPECT_EQ(parse_comment_header("/* wbeditentity-update:0| */"),
            (CommentHeader{"wbeditentity", "update", std::nullopt}));
  EXPECT_EQ(parse_comment_header("/* unterminated"), CommentHeader{});
}

TEST(ExtractContextTest, MergedLine) {
  const RawFeatures f = extract_features(parse_line(kMergedLine));
  EXPECT_EQ(f[CF::kUserCountry], "GB");
  EXPECT_EQ(f[CF::kUserContinent], "EU");
  EXPECT_EQ(f[CF::kUserTimeZone], "GMT");
  EXPECT_EQ(f[CF::kUserCity], "LEEDS");
  EXPECT_EQ(f[CF::kUserRegion], "EN");
  EXPECT_EQ(f[CF::kUserCounty], "WEST YORKSHIRE");
  EXPECT_EQ(f[CF::kRevisionAction], "wbsetclaim");
  EXPECT_EQ(f[CF::kRevisionSubaction], "create");
  EXPECT_FALSE(f[CF::kRevisionLanguage].has_value());
  EXPECT_FALSE(f[CF::kRevisionTag].has_value());
  EXPECT_EQ(f[NF::kIsRegisteredUser], 0);
  EXPECT_EQ(f[NF::kHasContributor], 1);
}

TEST(ExtractContextTest, RegisteredUserWithoutGeo) {
  Revision r;
  r.registered = true;
  r.comment = "#autolist2 added";
  const RawFeatures f = extract_context(r);
  EXPECT_EQ(f[NF::kIsRegisteredUser], 1);
  for (CF c : {CF::kUserCountry, CF::kUserTimeZone, CF::kUserCity, CF::kUserCounty,
               CF::kUserRegion, CF::kUserContinent}) {
    EXPECT_FALSE(f[c].has_value());
  }
  EXPECT_EQ(f[CF::kRevisionTag], "autolist2");
  EXPECT_EQ(f[NF::kCommentLength], 0);  // content slots stay empty
}

TEST(ExtractContextTest, LatinLanguage) {
  Revision r;
  r.comment = "/* wbsetlabel-add:1|en */ x";
  EXPECT_EQ(extract_context(r)[NF::kIsLatinLanguage], 1);
  r.comment = "/* wbsetlabel-add:1|ja */ x";
  EXPECT_EQ(extract_context(r)[NF::kIsLatinLanguage], 0);
  EXPECT_TRUE(is_latin_script_language("de"));
  EXPECT_FALSE(is_latin_script_language("ru"));
}

RawFeatures raw_with(std::optional<std::string> country, std::optional<std::string> action = {}) {
  RawFeatures f;
  f[CF::kUserCountry] = std::move(country);
  f[CF::kRevisionAction] = std::move(action);
  return f;
}

std::string saved(const FeatureSchema& s) {
  std::ostringstream out;
  s.save(out);
  return out.str();
}

TEST(SchemaTest, CountsColumns) {
  const std::vector<RawFeatures> data{raw_with("GB", "wbsetclaim"), raw_with("US"), raw_with("GB")};
  const FeatureSchema s = build_schema(data);
  EXPECT_EQ(s.numeric_names().size(), 21u);
  EXPECT_EQ(s.total_dim(), 21u + 3u);
  EXPECT_EQ(s.column("userCountry", "US").value_or(0), 23u);
  EXPECT_EQ(s.column_name(21), "revisionAction=wbsetclaim");
  EXPECT_EQ(build_schema(std::vector<RawFeatures>{RawFeatures{}}).total_dim(), 21u);
  EXPECT_THROW(build_schema(std::vector<RawFeatures>{}), Error);
}

TEST(SchemaTest, OrderInvariantAndRoundTrips) {
  std::vector<RawFeatures> data{raw_with("GB", "a"), raw_with("US", "b\tc"), raw_with("x\\y\nz")};
  const FeatureSchema s = build_schema(data);
  std::reverse(data.begin(), data.end());
  EXPECT_EQ(saved(build_schema(data)), saved(s));
  std::istringstream in(saved(s));
  const FeatureSchema loaded = FeatureSchema::load(in);
  EXPECT_EQ(loaded, s);
  EXPECT_EQ(saved(loaded), saved(s));
  EXPECT_EQ(saved(s).rfind(kSchemaHeader, 0), 0u);
}

TEST(SchemaTest, LoadRejectsBadFiles) {
  std::istringstream wrong_header("vandalstack-schema v0\n");
  EXPECT_THROW(FeatureSchema::load(wrong_header), Error);
  std::istringstream unsorted(std::string(kSchemaHeader) + "\nN a\nC f\tz\nC f\ta\n");
  EXPECT_THROW(FeatureSchema::load(unsorted), Error);
}

TEST(EncodeTest, OneHotAndZeroFill) {
  const FeatureSchema s = build_schema(std::vector<RawFeatures>{raw_with("GB"), raw_with("US")});
  RawFeatures gb = raw_with("GB");
  gb[NF::kLowerCaseRatio] = 0.5;
  const SparseVector v = encode(gb, s);
  EXPECT_EQ(v.dim(), 23u);
  ASSERT_EQ(v.nnz(), 2u);
  EXPECT_EQ(v.entries()[0], (SparseEntry{0, 0.5}));
  EXPECT_EQ(v.entries()[1], (SparseEntry{21, 1.0}));
  EXPECT_EQ(encode(raw_with("FR"), s).nnz(), 0u);
  EXPECT_EQ(encode(raw_with(std::nullopt), s).nnz(), 0u);
}

TEST(EncodeTest, AtMostOneOnePerCategoricalFeature) {
  std::vector<Revision> revs;
  std::istringstream in(std::string(kMergedLine) +
                        "\n2\t/* wbsetlabel-add:1|en */ hi #tag\t1\t0,US,NA,EST,NY,NYC,KINGS,x\n");
  revs = load_corpus(in).revisions;
  std::vector<RawFeatures> raw;
  for (const auto& r : revs) raw.push_back(extract_features(r));
  const FeatureSchema s = build_schema(raw);
  for (const auto& f : raw) {
    const SparseVector v = encode(f, s);
    std::vector<std::string> seen;
    for (const auto& e : v.entries()) {
      if (e.index < s.numeric_names().size()) continue;
      EXPECT_EQ(e.value, 1.0);
      const auto& feature = s.categorical_vocab()[e.index - s.numeric_names().size()].first;
      EXPECT_EQ(std::count(seen.begin(), seen.end(), feature), 0);
      seen.push_back(feature);
    }
  }
}

}  // namespace
}  // namespace vandalstack
