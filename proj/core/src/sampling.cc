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

#include "vandalstack/sampling.h"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"
#include "vandalstack/random.h"

namespace vandalstack {
namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// Content of a revision minus its id, as one string with unambiguous field
// boundaries (each field is length-prefixed, missing differs from empty).
std::string content_key(const Revision& r) {
  std::string key;
  auto add = [&key](const std::optional<std::string>& field) {
    if (!field) {
      key += "-;";
      return;
    }
    key += std::to_string(field->size());
    key += ':';
    key += *field;
    key += ';';
  };
  add(r.comment);
  key += r.registered ? "R;" : "A;";
  add(r.country);
  add(r.continent);
  add(r.timezone);
  add(r.region);
  add(r.city);
  add(r.county);
  add(r.user_tag);
  return key;
}

}  // namespace

Fraction::Fraction(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0 || numerator == 0 || numerator > denominator) {
    throw Error(ErrorCode::kInvalidArgument,
                "sampling fraction must lie in (0, 1], got " +
                    std::to_string(numerator) + "/" + std::to_string(denominator));
  }
  const std::uint64_t g = gcd_u64(numerator, denominator);
  numerator_ = numerator / g;
  denominator_ = denominator / g;
}

Fraction Fraction::parse(std::string_view text) {
  text = trim(text);
  try {
    const std::size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
      return Fraction(parse_uint64(trim(text.substr(0, slash))),
                      parse_uint64(trim(text.substr(slash + 1))));
    }
    const std::size_t dot = text.find('.');
    if (dot == std::string_view::npos) return Fraction(parse_uint64(text), 1);
    const std::string_view whole = text.substr(0, dot);
    const std::string_view decimals = text.substr(dot + 1);
    if (decimals.empty() || decimals.size() > 18) {
      throw Error(ErrorCode::kFormat, "bad decimal");
    }
    std::uint64_t denominator = 1;
    for (std::size_t i = 0; i < decimals.size(); ++i) denominator *= 10;
    const std::uint64_t w = whole.empty() ? 0 : parse_uint64(whole);
    return Fraction(w * denominator + parse_uint64(decimals), denominator);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) throw;
    throw Error(ErrorCode::kInvalidArgument,
                "cannot parse sampling fraction '" + std::string(text) + "'");
  }
}

std::size_t Fraction::scale_rounded(std::size_t count) const {
  // round(count * num / den) = floor((2 * count * num + den) / (2 * den)).
  __extension__ using Wide = unsigned __int128;
  const Wide scaled = static_cast<Wide>(count) * numerator_ * 2 + denominator_;
  return static_cast<std::size_t>(scaled / (static_cast<Wide>(denominator_) * 2));
}

std::string Fraction::to_string() const {
  return std::to_string(numerator_) + "/" + std::to_string(denominator_);
}

std::vector<LabeledExample> undersample(const std::vector<LabeledExample>& examples,
                                        const SamplingConfig& cfg) {
  std::vector<const LabeledExample*> positives;
  std::vector<const LabeledExample*> negatives;
  for (const auto& e : examples) (e.label ? positives : negatives).push_back(&e);

  // Most recent first; ties cannot occur within a loaded corpus but are
  // broken by input position for stability.
  std::stable_sort(negatives.begin(), negatives.end(),
                   [](const LabeledExample* a, const LabeledExample* b) {
                     return a->revision.rev_id > b->revision.rev_id;
                   });
  if (cfg.window && *cfg.window < negatives.size()) negatives.resize(*cfg.window);

  const std::size_t take = cfg.fraction.scale_rounded(negatives.size());
  Rng rng(cfg.seed);
  // Partial Fisher-Yates: the first take slots end up a uniform sample.
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(negatives.size() - i));
    std::swap(negatives[i], negatives[j]);
  }
  negatives.resize(take);

  std::vector<LabeledExample> out;
  out.reserve(positives.size() + negatives.size());
  for (const auto* e : positives) out.push_back(*e);
  for (const auto* e : negatives) out.push_back(*e);
  std::stable_sort(out.begin(), out.end(), [](const LabeledExample& a, const LabeledExample& b) {
    return a.revision.rev_id < b.revision.rev_id;
  });
  return out;
}

std::vector<LabeledExample> dedup(const std::vector<LabeledExample>& examples) {
  std::unordered_map<std::string, std::size_t> keeper;
  keeper.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    auto [it, inserted] = keeper.emplace(content_key(examples[i].revision), i);
    if (!inserted && examples[i].revision.rev_id < examples[it->second].revision.rev_id) {
      it->second = i;
    }
  }
  std::vector<std::uint8_t> keep(examples.size(), 0);
  for (const auto& [key, index] : keeper) keep[index] = 1;
  std::vector<LabeledExample> out;
  out.reserve(keeper.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (keep[i]) out.push_back(examples[i]);
  }
  return out;
}

std::vector<LabeledExample> prepare_training_set(
    const std::vector<LabeledExample>& examples, const SamplingConfig& cfg) {
  if (!cfg.dedup) return undersample(examples, cfg);
  if (cfg.dedup_order == DedupOrder::kBefore) return undersample(dedup(examples), cfg);
  return dedup(undersample(examples, cfg));
}

}  // namespace vandalstack
