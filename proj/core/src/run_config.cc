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

#include "vandalstack/run_config.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"
#include "vandalstack/random.h"

namespace vandalstack {
namespace {

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorCode::kInvalidArgument,
              std::string(key) + ": expected true or false, got '" + std::string(value) + "'");
}

std::vector<ModelSpec> parse_spec_list(std::string_view value) {
  std::vector<ModelSpec> specs;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t end = std::min(value.find(';', start), value.size());
    const std::string_view item = trim(value.substr(start, end - start));
    if (!item.empty()) specs.push_back(ModelSpec::parse(item));
    start = end + 1;
  }
  if (specs.empty()) throw Error(ErrorCode::kInvalidArgument, "empty model list");
  return specs;
}

std::string join_specs(const std::vector<ModelSpec>& specs) {
  std::string out;
  for (const auto& spec : specs) {
    if (!out.empty()) out += "; ";
    out += spec.to_string();
  }
  return out;
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
  const std::string v(trim(value));
  if (key == "seed") {
    master_seed = parse_uint64(v);
  } else if (key == "paths.corpus") {
    paths.corpus = v;
  } else if (key == "paths.truth") {
    paths.truth = v;
  } else if (key == "paths.schema") {
    paths.schema = v;
  } else if (key == "paths.pipeline") {
    paths.pipeline = v;
  } else if (key == "paths.output") {
    paths.output = v;
  } else if (key == "corpus.malformed") {
    if (v == "skip") {
      malformed = MalformedPolicy::kSkip;
    } else if (v == "abort") {
      malformed = MalformedPolicy::kAbort;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "corpus.malformed: expected skip or abort");
    }
  } else if (key == "sampling.fraction") {
    sampling.fraction = Fraction::parse(v);
  } else if (key == "sampling.window") {
    sampling.window = v == "all" ? std::nullopt : std::optional<std::size_t>(parse_uint64(v));
  } else if (key == "sampling.seed") {
    sampling.seed = parse_uint64(v);
    sampling_seed_explicit = true;
  } else if (key == "sampling.dedup") {
    sampling.dedup = parse_bool(key, v);
  } else if (key == "sampling.dedup_order") {
    if (v == "after") {
      sampling.dedup_order = DedupOrder::kAfter;
    } else if (v == "before") {
      sampling.dedup_order = DedupOrder::kBefore;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "sampling.dedup_order: expected after or before");
    }
  } else if (key == "selection.threshold") {
    selection_threshold = parse_double(v);
    if (!(selection_threshold >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "selection.threshold must be non-negative");
    }
  } else if (key == "selection.seed") {
    selection_seed = parse_uint64(v);
  } else if (key == "stack.k") {
    stack.k = parse_uint64(v);
  } else if (key == "stack.refit_full") {
    stack.refit_full = parse_bool(key, v);
  } else if (key == "stack.first_stage") {
    stack.first_stage = parse_spec_list(v);
  } else if (key == "stack.second_stage") {
    stack.second_stage = parse_spec_list(v);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + std::string(key) + "'");
  }
}

RunConfig RunConfig::parse(std::istream& in, const std::string& base_dir) {
  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      cfg.set(trim(text.substr(0, eq)), text.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.code(), "config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!base_dir.empty()) {
    for (std::string* p : {&cfg.paths.corpus, &cfg.paths.truth, &cfg.paths.schema,
                           &cfg.paths.pipeline, &cfg.paths.output}) {
      if (!p->empty() && std::filesystem::path(*p).is_relative()) {
        *p = (std::filesystem::path(base_dir) / *p).string();
      }
    }
  }
  cfg.finalize();
  return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path);
  return parse(in, std::filesystem::path(path).parent_path().string());
}

void RunConfig::finalize() {
  if (!sampling_seed_explicit) sampling.seed = derive_seed(master_seed, "sampling");
  stack.seed = derive_seed(master_seed, "stack");
  stack.validate();
}

void RunConfig::write(std::ostream& out) const {
  out << "seed = " << master_seed << '\n';
  if (!paths.corpus.empty()) out << "paths.corpus = " << paths.corpus << '\n';
  if (!paths.truth.empty()) out << "paths.truth = " << paths.truth << '\n';
  if (!paths.schema.empty()) out << "paths.schema = " << paths.schema << '\n';
  if (!paths.pipeline.empty()) out << "paths.pipeline = " << paths.pipeline << '\n';
  if (!paths.output.empty()) out << "paths.output = " << paths.output << '\n';
  out << "corpus.malformed = " << (malformed == MalformedPolicy::kSkip ? "skip" : "abort") << '\n';
  out << "sampling.fraction = " << sampling.fraction.to_string() << '\n';
  out << "sampling.window = "
      << (sampling.window ? std::to_string(*sampling.window) : std::string("all")) << '\n';
  if (sampling_seed_explicit) out << "sampling.seed = " << sampling.seed << '\n';
  out << "sampling.dedup = " << (sampling.dedup ? "true" : "false") << '\n';
  out << "sampling.dedup_order = "
      << (sampling.dedup_order == DedupOrder::kAfter ? "after" : "before") << '\n';
  out << "selection.threshold = " << format_double(selection_threshold) << '\n';
  out << "selection.seed = " << selection_seed << '\n';
  out << "stack.k = " << stack.k << '\n';
  out << "stack.refit_full = " << (stack.refit_full ? "true" : "false") << '\n';
  out << "stack.first_stage = " << join_specs(stack.first_stage) << '\n';
  out << "stack.second_stage = " << join_specs(stack.second_stage) << '\n';
}

}  // namespace vandalstack
