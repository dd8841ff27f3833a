/* Copyright 2026 The kgen Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kgen/knowledge/keyphrases.hpp"
#include "kgen/knowledge/search_client.hpp"

namespace kgen {

/// How many query keyphrases take part in overlap scoring.
inline constexpr std::size_t kQueryKeyphrases = 10;

/// IDF-weighted keyphrase overlap: the summed word IDF of every top query
/// keyphrase that is also a phrase candidate of the passage.
inline double keyphrase_overlap(const std::vector<std::string>& query_phrases,
                                std::string_view passage, const DocumentStore& store) {
  std::unordered_set<std::string> present;
  for (auto& c : phrase_candidates(passage)) present.insert(std::move(c.phrase));
  double total = 0.0;
  for (const auto& q : query_phrases) {
    if (!present.count(q)) continue;
    for (const auto& w : text::words(q)) total += store.idf(w);
  }
  return total;
}

/// Scores every passage's relevance and orders them.
///
/// Passages without a source ranking are sorted by relevance (stable). Passages
/// that came with one keep their source order (by source_rank, stable); the two
/// sequences are then merged by relevance, so a fully source-ranked input is
/// returned in source order.
inline std::vector<KnowledgePassage> rank_passages(std::string_view query,
                                                   std::vector<KnowledgePassage> passages,
                                                   const DocumentStore& store) {
  const auto qphrases = text::trim(query).empty()
                            ? std::vector<std::string>{}
                            : extract_keyphrases(query, store, kQueryKeyphrases);
  std::vector<KnowledgePassage> ranked, pass_through;
  for (auto& p : passages) {
    p.relevance = qphrases.empty() ? 0.0 : keyphrase_overlap(qphrases, p.text, store);
    (p.source_rank ? pass_through : ranked).push_back(std::move(p));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.relevance > b.relevance; });
  std::stable_sort(pass_through.begin(), pass_through.end(),
                   [](const auto& a, const auto& b) { return *a.source_rank < *b.source_rank; });
  std::vector<KnowledgePassage> out;
  out.reserve(ranked.size() + pass_through.size());
  std::size_t i = 0, j = 0;
  while (i < ranked.size() || j < pass_through.size()) {
    const bool take_ranked =
        j == pass_through.size() ||
        (i < ranked.size() && ranked[i].relevance >= pass_through[j].relevance);
    out.push_back(std::move(take_ranked ? ranked[i++] : pass_through[j++]));
  }
  return out;
}

struct RetrievalResult {
  std::vector<KnowledgePassage> passages;
  /// One line per search client that failed; its results were dropped.
  std::vector<std::string> warnings;
};

/// Store passages plus client results (client list order), deduplicated by
/// normalized text, ranked, and cut to `k`. An empty `sources` set admits every
/// source.
inline RetrievalResult retrieve(std::string_view query, const DocumentStore& store,
                                const std::vector<SearchClientPtr>& clients, std::size_t k,
                                const std::set<PassageSource>& sources = {}) {
  if (k < 1) throw InvalidArgument("retrieve k must be >= 1");
  RetrievalResult result;
  std::vector<KnowledgePassage> pool;
  std::unordered_set<std::string> seen;
  auto admit = [&](KnowledgePassage p) {
    if (!sources.empty() && !sources.count(p.source)) return;
    if (text::trim(p.text).empty()) return;
    if (!seen.insert(text::normalize(p.text)).second) return;
    pool.push_back(std::move(p));
  };
  for (const auto& p : store.passages()) admit(p);
  for (const auto& client : clients) {
    try {
      for (auto& p : client->search(query, k)) admit(std::move(p));
    } catch (const std::exception& e) {
      result.warnings.push_back("search client '" + client->name() + "' failed: " + e.what());
    }
  }
  result.passages = rank_passages(query, std::move(pool), store);
  if (result.passages.size() > k) result.passages.resize(k);
  return result;
}

}  // namespace kgen
