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

#include <sstream>

#include "vandalstack/corpus.h"
#include "vandalstack/error.h"

namespace vandalstack {
namespace {

constexpr const char* kMergedLine =
    "308612969\t/* wbsetclaim-create:2||1 */ [[Property:P800]]: [[Q5974487]]\t1\t"
    "0,GB,EU,GMT,EN,LEEDS,WEST YORKSHIRE,";

TEST(ParseLineTest, MergedLineExample) {
  const Revision r = parse_line(kMergedLine);
  EXPECT_EQ(r.rev_id, 308612969u);
  EXPECT_EQ(r.comment, "/* wbsetclaim-create:2||1 */ [[Property:P800]]: [[Q5974487]]");
  EXPECT_TRUE(r.has_contributor);
  EXPECT_FALSE(r.registered);
  EXPECT_EQ(r.country, "GB");
  EXPECT_EQ(r.continent, "EU");
  EXPECT_EQ(r.timezone, "GMT");
  EXPECT_EQ(r.region, "EN");
  EXPECT_EQ(r.city, "LEEDS");
  EXPECT_EQ(r.county, "WEST YORKSHIRE");
  EXPECT_FALSE(r.user_tag.has_value());
}

TEST(ParseLineTest, SevenMetaFieldsAndTrailingCr) {
  const Revision r = parse_line("5\thello\t0\t1,,,,,,\r");
  EXPECT_TRUE(r.registered);
  EXPECT_FALSE(r.has_contributor);
  EXPECT_FALSE(r.country.has_value());
  EXPECT_EQ(r.comment, "hello");
}

TEST(ParseLineTest, CommentMayContainTabsAndUserTagCommas) {
  const Revision r = parse_line("9\ta\tb\tc\t1\t0,US,NA,EST,NY,NYC,KINGS,tag,with,commas");
  EXPECT_EQ(r.comment, "a\tb\tc");
  EXPECT_EQ(r.user_tag, "tag,with,commas");
}

TEST(ParseLineTest, RejectsMalformedLines) {
  EXPECT_THROW(parse_line("abc\tx\t1\t0,,,,,,"), Error);
  EXPECT_THROW(parse_line("1\tx\t1"), Error);
  EXPECT_THROW(parse_line("1\tx\t2\t0,,,,,,"), Error);
  EXPECT_THROW(parse_line("1\tx\t1\t0,,,"), Error);
  EXPECT_THROW(parse_line("\tx\t1\t0,,,,,,"), Error);
  try {
    parse_line("1\tx\t1");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedLine);
  }
}

TEST(ParseLineTest, SerializeRoundTrip) {
  Revision r = parse_line(kMergedLine);
  EXPECT_EQ(parse_line(serialize_line(r)), r);
  r.user_tag = "x,y";
  r.comment = "tab\there";
  EXPECT_EQ(parse_line(serialize_line(r)), r);
}

TEST(LoadCorpusTest, SkipsAndCountsMalformedAndDuplicateIds) {
  std::istringstream in(std::string(kMergedLine) + "\n\nbad line\n308612969\tdup\t1\t0,,,,,,\n7\tok\t1\t1,,,,,,\n");
  const auto result = load_corpus(in);
  EXPECT_EQ(result.revisions.size(), 2u);
  EXPECT_EQ(result.malformed_count, 2u);
  std::istringstream again(std::string(kMergedLine) + "\nbad line\n");
  EXPECT_THROW(load_corpus(again, MalformedPolicy::kAbort), Error);
}

TEST(LabelsTest, SpellingsAndConflicts) {
  std::istringstream in("1\tT\n2\tfalse\n3\tROLLBACK_REVERTED\n1\ttrue\n");
  const LabelMap labels = load_labels(in);
  EXPECT_TRUE(labels.at(1));
  EXPECT_FALSE(labels.at(2));
  EXPECT_TRUE(labels.at(3));
  std::istringstream conflict("1\t1\n1\t0\n");
  try {
    load_labels(conflict);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateConflict);
  }
  std::istringstream bad("1\tmaybe\n");
  EXPECT_THROW(load_labels(bad), Error);
}

TEST(JoinTest, KeepsCorpusOrderAndCountsUnlabeled) {
  std::vector<Revision> revs(3);
  revs[0].rev_id = 3;
  revs[1].rev_id = 1;
  revs[2].rev_id = 2;
  const JoinResult j = join_labels(revs, LabelMap{{3, true}, {2, false}});
  ASSERT_EQ(j.examples.size(), 2u);
  EXPECT_EQ(j.examples[0].revision.rev_id, 3u);
  EXPECT_TRUE(j.examples[0].label);
  EXPECT_EQ(j.unlabeled_count, 1u);
}

}  // namespace
}  // namespace vandalstack
