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

#ifndef VANDALSTACK_CORPUS_H_
#define VANDALSTACK_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vandalstack {

using RevisionId = std::uint64_t;

// One revision of the merged corpus. Optional strings are never empty: an
// empty meta field decodes to std::nullopt.
struct Revision {
  RevisionId rev_id = 0;
  std::string comment;
  bool has_contributor = false;
  bool registered = false;
  std::optional<std::string> country;
  std::optional<std::string> continent;
  std::optional<std::string> timezone;
  std::optional<std::string> region;
  std::optional<std::string> city;
  std::optional<std::string> county;
  std::optional<std::string> user_tag;
  std::optional<bool> label;

  friend bool operator==(const Revision&, const Revision&) = default;
};

struct LabeledExample {
  Revision revision;
  bool label = false;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

// Corpus line:  rev_id TAB comment TAB has_contributor(0|1) TAB meta_csv
// meta_csv:     registered(0|1),country,continent,timezone,region,city,county[,user_tag]
//
// The first TAB ends the id and the last two TABs delimit the flag and the
// meta block, so a comment may itself contain TABs. A trailing CR is
// ignored. user_tag is the remainder after the seventh comma and may contain
// commas. Throws Error(kMalformedLine).
Revision parse_line(std::string_view line);

// Canonical line for a revision (always eight meta fields, no newline).
// parse_line(serialize_line(r)) == r for any r whose strings contain no
// LF/CR and whose meta fields contain no comma (user_tag excepted).
std::string serialize_line(const Revision& revision);

enum class MalformedPolicy { kSkip, kAbort };

struct CorpusLoadResult {
  std::vector<Revision> revisions;
  std::size_t malformed_count = 0;
};

// Reads one record per line in file order. Blank lines are ignored. A line
// that fails to parse, or repeats an already loaded rev_id, is counted and
// skipped under kSkip and raises Error(kMalformedLine) under kAbort.
CorpusLoadResult load_corpus(std::istream& in,
                             MalformedPolicy policy = MalformedPolicy::kSkip);
CorpusLoadResult load_corpus_file(const std::string& path,
                                  MalformedPolicy policy = MalformedPolicy::kSkip);

void write_corpus(std::ostream& out, const std::vector<Revision>& revisions);

// Accepted spellings of the two truth values; matching is exact.
struct LabelSpellings {
  std::vector<std::string> positive = {"1", "true", "TRUE", "T", "ROLLBACK_REVERTED"};
  std::vector<std::string> negative = {"0", "false", "FALSE", "F"};
};

using LabelMap = std::unordered_map<RevisionId, bool>;

// Truth file: "rev_id TAB label" per line. A repeated id with the same label
// is tolerated; with a different label it raises kDuplicateConflict.
LabelMap load_labels(std::istream& in, const LabelSpellings& spellings = {});
LabelMap load_labels_file(const std::string& path,
                          const LabelSpellings& spellings = {});

// Writes labels as "rev_id TAB 0|1" in the order of the given examples.
void write_labels(std::ostream& out, const std::vector<LabeledExample>& examples);

struct JoinResult {
  std::vector<LabeledExample> examples;
  std::size_t unlabeled_count = 0;
};

JoinResult join_labels(const std::vector<Revision>& revisions,
                       const LabelMap& labels);

}  // namespace vandalstack

#endif  // VANDALSTACK_CORPUS_H_
