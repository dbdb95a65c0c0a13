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

#include "vandalstack/error.h"
#include "vandalstack/sampling.h"

namespace vandalstack {
namespace {

LabeledExample example(RevisionId id, bool label, std::string comment = "") {
  LabeledExample e;
  e.revision.rev_id = id;
  e.revision.comment = comment.empty() ? "c" + std::to_string(id) : comment;
  e.revision.label = label;
  e.label = label;
  return e;
}

// positives get ids 1001.., negatives 1..negatives
std::vector<LabeledExample> make_set(std::size_t positives, std::size_t negatives) {
  std::vector<LabeledExample> out;
  for (std::size_t i = 1; i <= negatives; ++i) out.push_back(example(i, false));
  for (std::size_t i = 0; i < positives; ++i) out.push_back(example(1001 + i, true));
  return out;
}

std::size_t count_label(const std::vector<LabeledExample>& v, bool label) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [&](const auto& e) { return e.label == label; }));
}

TEST(FractionTest, ParsesAndRoundsHalfUp) {
  EXPECT_EQ(Fraction::parse("1/50"), Fraction(1, 50));
  EXPECT_EQ(Fraction::parse("0.02"), Fraction(2, 100));
  EXPECT_EQ(Fraction::parse("1"), Fraction(1, 1));
  EXPECT_THROW(Fraction::parse("0"), Error);
  EXPECT_THROW(Fraction::parse("3/2"), Error);
  EXPECT_THROW(Fraction::parse("x"), Error);
  EXPECT_EQ(Fraction(1, 50).scale_rounded(100), 2u);
  EXPECT_EQ(Fraction(1, 50).scale_rounded(75), 2u);   // 1.5 rounds up
  EXPECT_EQ(Fraction(1, 50).scale_rounded(74), 1u);
  EXPECT_EQ(Fraction(1, 50).scale_rounded(10000), 200u);
}

TEST(UndersampleTest, OneFiftiethKeepsAllPositives) {
  SamplingConfig cfg;
  const auto out = undersample(make_set(5, 100), cfg);
  EXPECT_EQ(count_label(out, true), 5u);
  EXPECT_EQ(count_label(out, false), 2u);
  EXPECT_TRUE(std::is_sorted(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.revision.rev_id < b.revision.rev_id;
  }));
}

TEST(UndersampleTest, FractionOneIsIdentityMultiset) {
  SamplingConfig cfg;
  cfg.fraction = Fraction(1, 1);
  auto input = make_set(5, 100);
  auto out = undersample(input, cfg);
  auto by_id = [](const auto& a, const auto& b) { return a.revision.rev_id < b.revision.rev_id; };
  std::sort(input.begin(), input.end(), by_id);
  EXPECT_EQ(out, input);
}

TEST(UndersampleTest, WindowTakesLatestNegatives) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SamplingConfig cfg;
    cfg.window = 50;
    cfg.seed = seed;
    const auto out = undersample(make_set(5, 100), cfg);
    ASSERT_EQ(count_label(out, false), 1u);
    for (const auto& e : out) {
      if (!e.label) {
        EXPECT_GT(e.revision.rev_id, 50u);
      }
    }
  }
}

TEST(UndersampleTest, DeterministicAndSeedSensitive) {
  SamplingConfig cfg;
  cfg.fraction = Fraction(1, 10);
  cfg.seed = 1;
  const auto input = make_set(3, 500);
  const auto a = undersample(input, cfg);
  EXPECT_EQ(a, undersample(input, cfg));
  cfg.seed = 2;
  EXPECT_NE(a, undersample(input, cfg));
}

TEST(UndersampleTest, InputOrderDoesNotMatter) {
  SamplingConfig cfg;
  cfg.fraction = Fraction(1, 10);
  auto input = make_set(3, 500);
  const auto a = undersample(input, cfg);
  std::reverse(input.begin(), input.end());
  EXPECT_EQ(a, undersample(input, cfg));
}

TEST(UndersampleTest, EmptyInput) {
  EXPECT_TRUE(undersample({}, SamplingConfig{}).empty());
}

TEST(DedupTest, KeepsEarliestRevId) {
  const std::vector<LabeledExample> input{example(20, false, "same"), example(10, false, "same"),
                                          example(30, true, "other")};
  const auto out = dedup(input);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].revision.rev_id, 10u);
  EXPECT_EQ(out[1].revision.rev_id, 30u);
}

TEST(DedupTest, MetaFieldsArePartOfTheKey) {
  auto a = example(1, false, "same");
  auto b = example(2, false, "same");
  a.revision.country = "GB";
  b.revision.country = "US";
  EXPECT_EQ(dedup({a, b}).size(), 2u);
  b.revision.country = "GB";
  EXPECT_EQ(dedup({a, b}).size(), 1u);
  b.revision.registered = true;
  EXPECT_EQ(dedup({a, b}).size(), 2u);
}

TEST(DedupTest, DistinctInputUnchangedAndIdempotent) {
  const auto input = make_set(3, 20);
  EXPECT_EQ(dedup(input), input);
  auto with_dups = input;
  with_dups.push_back(example(5000, false, "c3"));
  with_dups.push_back(example(5001, true, "c1001"));
  const auto once = dedup(with_dups);
  EXPECT_EQ(once, input);
  EXPECT_EQ(dedup(once), once);
}

TEST(PrepareTest, DedupOrderIsConfigurable) {
  auto input = make_set(2, 100);
  for (RevisionId id = 200; id < 300; ++id) input.push_back(example(id, false, "spam"));
  SamplingConfig cfg;
  cfg.fraction = Fraction(1, 2);
  const auto after = prepare_training_set(input, cfg);
  cfg.dedup_order = DedupOrder::kBefore;
  const auto before = prepare_training_set(input, cfg);
  EXPECT_EQ(count_label(before, false), 51u);  // round(101 / 2)
  EXPECT_LT(count_label(after, false), 100u);
  cfg.dedup = false;
  EXPECT_EQ(count_label(prepare_training_set(input, cfg), false), 100u);
}

}  // namespace
}  // namespace vandalstack
