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

#include "vandalstack/corpus.h"

#include <algorithm>
#include <fstream>
#include <string>
#include <unordered_set>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"

namespace vandalstack {
namespace {

[[noreturn]] void malformed(const std::string& why, std::string_view line) {
  constexpr std::size_t kPreview = 80;
  std::string preview(line.substr(0, kPreview));
  if (line.size() > kPreview) preview += "...";
  throw Error(ErrorCode::kMalformedLine, why + ": '" + preview + "'");
}

bool parse_flag(std::string_view text, bool& out) {
  if (text == "0") {
    out = false;
    return true;
  }
  if (text == "1") {
    out = true;
    return true;
  }
  return false;
}

std::optional<std::string> optional_field(std::string_view text) {
  if (text.empty()) return std::nullopt;
  return std::string(text);
}

bool parse_rev_id(std::string_view text, RevisionId& out) {
  if (text.empty() || text.front() < '0' || text.front() > '9') return false;
  try {
    out = parse_uint64(text);
  } catch (const Error&) {
    return false;
  }
  return true;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return in;
}

}  // namespace

Revision parse_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const std::size_t first_tab = line.find('\t');
  const std::size_t last_tab = line.rfind('\t');
  if (first_tab == std::string_view::npos || last_tab == first_tab) {
    malformed("expected 4 TAB-separated fields", line);
  }
  const std::size_t flag_tab = line.rfind('\t', last_tab - 1);
  if (flag_tab == first_tab) malformed("expected 4 TAB-separated fields", line);

  Revision rev;
  if (!parse_rev_id(line.substr(0, first_tab), rev.rev_id)) {
    malformed("revision id is not a non-negative integer", line);
  }
  rev.comment = std::string(line.substr(first_tab + 1, flag_tab - first_tab - 1));
  if (!parse_flag(line.substr(flag_tab + 1, last_tab - flag_tab - 1),
                  rev.has_contributor)) {
    malformed("contributor flag must be 0 or 1", line);
  }

  std::string_view meta = line.substr(last_tab + 1);
  std::string_view fields[8];
  std::size_t count = 0;
  while (count < 7) {
    const std::size_t comma = meta.find(',');
    if (comma == std::string_view::npos) break;
    fields[count++] = meta.substr(0, comma);
    meta.remove_prefix(comma + 1);
  }
  // Seven commas: the remainder is user_tag. Six commas: exactly seven
  // fields, no user_tag.
  if (count == 7) {
    fields[count++] = meta;
  } else if (count == 6) {
    fields[count++] = meta;
  } else {
    malformed("meta block needs 7 or 8 comma-separated fields", line);
  }
  if (!parse_flag(fields[0], rev.registered)) {
    malformed("registered flag must be 0 or 1", line);
  }
  rev.country = optional_field(fields[1]);
  rev.continent = optional_field(fields[2]);
  rev.timezone = optional_field(fields[3]);
  rev.region = optional_field(fields[4]);
  rev.city = optional_field(fields[5]);
  rev.county = optional_field(fields[6]);
  if (count == 8) rev.user_tag = optional_field(fields[7]);
  return rev;
}

std::string serialize_line(const Revision& r) {
  std::string out = std::to_string(r.rev_id);
  out += '\t';
  out += r.comment;
  out += '\t';
  out += r.has_contributor ? '1' : '0';
  out += '\t';
  out += r.registered ? '1' : '0';
  for (const auto* field : {&r.country, &r.continent, &r.timezone, &r.region,
                            &r.city, &r.county, &r.user_tag}) {
    out += ',';
    if (*field) out += **field;
  }
  return out;
}

CorpusLoadResult load_corpus(std::istream& in, MalformedPolicy policy) {
  CorpusLoadResult result;
  std::unordered_set<RevisionId> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    try {
      Revision rev = parse_line(line);
      if (!seen.insert(rev.rev_id).second) {
        malformed("duplicate revision id " + std::to_string(rev.rev_id), line);
      }
      result.revisions.push_back(std::move(rev));
    } catch (const Error& e) {
      if (policy == MalformedPolicy::kAbort) throw;
      ++result.malformed_count;
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read error while loading corpus");
  return result;
}

CorpusLoadResult load_corpus_file(const std::string& path, MalformedPolicy policy) {
  auto in = open_input(path);
  return load_corpus(in, policy);
}

void write_corpus(std::ostream& out, const std::vector<Revision>& revisions) {
  for (const auto& r : revisions) out << serialize_line(r) << '\n';
}

LabelMap load_labels(std::istream& in, const LabelSpellings& spellings) {
  LabelMap labels;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty()) continue;
    const std::size_t tab = view.find('\t');
    if (tab == std::string_view::npos || view.find('\t', tab + 1) != std::string_view::npos) {
      malformed("truth line needs exactly 2 TAB-separated fields", view);
    }
    RevisionId id = 0;
    if (!parse_rev_id(view.substr(0, tab), id)) {
      malformed("revision id is not a non-negative integer", view);
    }
    const std::string_view token = view.substr(tab + 1);
    bool label;
    if (std::find(spellings.positive.begin(), spellings.positive.end(), token) !=
        spellings.positive.end()) {
      label = true;
    } else if (std::find(spellings.negative.begin(), spellings.negative.end(), token) !=
               spellings.negative.end()) {
      label = false;
    } else {
      malformed("unknown label spelling", view);
    }
    auto [it, inserted] = labels.emplace(id, label);
    if (!inserted && it->second != label) {
      throw Error(ErrorCode::kDuplicateConflict,
                  "conflicting labels for revision " + std::to_string(id));
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read error while loading labels");
  return labels;
}

LabelMap load_labels_file(const std::string& path, const LabelSpellings& spellings) {
  auto in = open_input(path);
  return load_labels(in, spellings);
}

void write_labels(std::ostream& out, const std::vector<LabeledExample>& examples) {
  for (const auto& e : examples) {
    out << e.revision.rev_id << '\t' << (e.label ? '1' : '0') << '\n';
  }
}

JoinResult join_labels(const std::vector<Revision>& revisions, const LabelMap& labels) {
  JoinResult result;
  result.examples.reserve(std::min(revisions.size(), labels.size()));
  for (const auto& rev : revisions) {
    auto it = labels.find(rev.rev_id);
    if (it == labels.end()) {
      ++result.unlabeled_count;
      continue;
    }
    LabeledExample example{rev, it->second};
    example.revision.label = it->second;
    result.examples.push_back(std::move(example));
  }
  return result;
}

}  // namespace vandalstack
