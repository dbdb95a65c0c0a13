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

#include "vandalstack/synthetic.h"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "vandalstack/error.h"
#include "vandalstack/random.h"

namespace vandalstack {
namespace {

constexpr std::size_t kNumericColumns = 10;
constexpr std::size_t kCategoricalColumns = 5;

std::string category_value(std::size_t value) { return "v" + std::to_string(value); }

// Labels the top round(rate * n) latent scores positive; ties by index.
std::vector<std::uint8_t> top_share(const std::vector<double>& latent, double rate) {
  const std::size_t n = latent.size();
  const auto positives =
      std::min<std::size_t>(n, static_cast<std::size_t>(rate * static_cast<double>(n) + 0.5));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return latent[a] > latent[b]; });
  std::vector<std::uint8_t> labels(n, 0);
  for (std::size_t k = 0; k < positives; ++k) labels[order[k]] = 1;
  return labels;
}

struct Place {
  const char* country;
  const char* continent;
  const char* timezone;
  const char* region;
  const char* city;
  const char* county;
};

constexpr std::array<Place, 7> kPlaces = {{
    {"GB", "EU", "GMT", "EN", "LEEDS", "WEST YORKSHIRE"},
    {"US", "NA", "America/New_York", "NY", "NEW YORK", "NEW YORK"},
    {"DE", "EU", "Europe/Berlin", "BE", "BERLIN", "BERLIN"},
    {"FR", "EU", "Europe/Paris", "IDF", "PARIS", "PARIS"},
    {"JP", "AS", "Asia/Tokyo", "13", "TOKYO", "TOKYO"},
    {"IN", "AS", "Asia/Kolkata", "MH", "MUMBAI", "MUMBAI"},
    {"BR", "SA", "America/Sao_Paulo", "SP", "SAO PAULO", "SAO PAULO"},
}};

constexpr std::array<const char*, 8> kDescriptions = {
    "human",          "village in Poland",  "species of insect", "Wikimedia category",
    "river in Germany", "painting by Claude Monet", "scientific article", "family name",
};

constexpr std::array<const char*, 6> kNames = {
    "Anna Schmidt", "Jean Dupont", "Maria Silva", "Kenji Sato", "Priya Nair", "John Smith",
};

constexpr std::array<const char*, 5> kLanguages = {"en", "de", "fr", "ja", "pt"};

constexpr std::array<const char*, 9> kVandalText = {
    "LOL YOU SUCK!!!!",
    "hahahahahaha",
    "poop poop poop",
    "my friend is the best person ever",
    "THIS IS FAKE",
    "visit http://spam.example.com now",
    "ssssssssssssssssss",
    "i love you",
    "go to www.example.net for free stuff",
};

template <std::size_t N>
const char* pick(const std::array<const char*, N>& options, Rng& rng) {
  return options[rng.uniform_below(N)];
}

std::string regular_comment(Rng& rng) {
  const auto kind = rng.uniform_below(5);
  const std::string lang = pick(kLanguages, rng);
  switch (kind) {
    case 0:
    case 1:
      return "/* wbsetclaim-create:2||1 */ [[Property:P" + std::to_string(1 + rng.uniform_below(900)) +
             "]]: [[Q" + std::to_string(1 + rng.uniform_below(5000000)) + "]]";
    case 2:
      return "/* wbsetdescription-add:1|" + lang + " */ " + pick(kDescriptions, rng);
    case 3:
      return "/* wbsetlabel-add:1|" + lang + " */ " + pick(kNames, rng);
    default:
      return "/* wbcreateclaim-create:1| */ #autolist2 [[Property:P31]]: [[Q" +
             std::to_string(1 + rng.uniform_below(100000)) + "]]";
  }
}

std::string vandal_comment(Rng& rng) {
  const auto kind = rng.uniform_below(10);
  if (kind < 2) return regular_comment(rng);
  const std::string lang = rng.uniform01() < 0.7 ? "en" : pick(kLanguages, rng);
  const std::string action = kind < 6 ? "wbsetlabel-set:1|" : "wbsetdescription-set:1|";
  std::string text = pick(kVandalText, rng);
  if (kind == 9) text += " [[Special:Contributions/" + std::to_string(rng.uniform_below(1000)) + "]]";
  return "/* " + action + lang + " */ " + text;
}

}  // namespace

SyntheticTable make_synthetic_table(std::size_t n, double positive_rate, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "synthetic table needs n > 0");
  Rng rng(derive_seed(seed, "synthetic_table"));

  std::vector<std::array<double, kNumericColumns>> x(n);
  std::vector<std::array<std::size_t, kCategoricalColumns>> c(n);
  std::vector<double> latent(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : x[i]) v = rng.uniform01();
    for (std::size_t k = 0; k < kCategoricalColumns; ++k) c[i][k] = rng.uniform_below(3 + k);
    const bool xor_term = (x[i][0] > 0.5) != (x[i][1] > 0.5);
    latent[i] = 3.0 * (xor_term ? 1.0 : 0.0) + 2.0 * x[i][2] * x[i][3] + 0.5 * x[i][4] +
                0.3 * rng.normal();
  }
  std::vector<std::uint8_t> labels = top_share(latent, positive_rate);

  std::vector<std::string> numeric;
  for (std::size_t j = 0; j < kNumericColumns; ++j) numeric.push_back("x" + std::to_string(j));
  std::vector<FeatureSchema::VocabEntry> vocab;
  for (std::size_t k = 0; k < kCategoricalColumns; ++k) {
    for (std::size_t v = 0; v < 3 + k; ++v) {
      vocab.emplace_back("c" + std::to_string(k), category_value(v));
    }
  }
  SyntheticTable table;
  table.schema = FeatureSchema(numeric, vocab);
  for (std::size_t col = kNumericColumns; col < table.schema.total_dim(); ++col) {
    table.noise_categorical_columns.push_back(col);
  }

  std::vector<SparseVector> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseVector row(table.schema.total_dim());
    for (std::size_t j = 0; j < kNumericColumns; ++j) row.push_back(static_cast<std::uint32_t>(j), x[i][j]);
    for (std::size_t k = 0; k < kCategoricalColumns; ++k) {
      const auto col = table.schema.column("c" + std::to_string(k), category_value(c[i][k]));
      row.push_back(static_cast<std::uint32_t>(*col), 1.0);
    }
    rows.push_back(std::move(row));
    table.ids.push_back(static_cast<RevisionId>(i + 1));
  }
  table.data = Dataset(table.schema.total_dim(), std::move(rows), std::move(labels));
  return table;
}

SyntheticCorpus make_synthetic_corpus(std::size_t n, double positive_rate, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "synthetic_corpus"));
  SyntheticCorpus corpus;
  corpus.revisions.reserve(n);
  RevisionId next_id = 300000000;
  for (std::size_t i = 0; i < n; ++i) {
    next_id += 1 + rng.uniform_below(50);
    Revision r;
    bool vandal = false;
    if (i >= 10 && rng.uniform01() < 0.03) {
      const Revision& source = corpus.revisions[rng.uniform_below(corpus.revisions.size())];
      r = source;
      vandal = corpus.labels.at(source.rev_id);
    } else {
      vandal = rng.uniform01() < positive_rate;
      r.comment = vandal ? vandal_comment(rng) : regular_comment(rng);
      r.has_contributor = rng.uniform01() < (vandal ? 0.9 : 0.98);
      r.registered = rng.uniform01() < (vandal ? 0.15 : 0.8);
      if (!r.registered) {
        const std::size_t place = vandal && rng.uniform01() < 0.6
                                      ? kPlaces.size() - 1 - rng.uniform_below(3)
                                      : rng.uniform_below(kPlaces.size());
        const Place& p = kPlaces[place];
        r.country = p.country;
        r.continent = p.continent;
        r.timezone = p.timezone;
        r.region = p.region;
        r.city = p.city;
        r.county = p.county;
      } else if (rng.uniform01() < 0.1) {
        r.user_tag = "bot";
      }
    }
    r.rev_id = next_id;
    r.label.reset();
    corpus.labels.emplace(r.rev_id, vandal);
    corpus.revisions.push_back(std::move(r));
  }
  return corpus;
}

}  // namespace vandalstack
