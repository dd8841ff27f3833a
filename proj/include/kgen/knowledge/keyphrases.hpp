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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kgen/core/text.hpp"
#include "kgen/knowledge/document_store.hpp"
#include "kgen/knowledge/stopwords.hpp"

namespace kgen {

struct PhraseCandidate {
  std::string phrase;
  std::vector<std::string> words;
  std::size_t frequency = 0;
  std::size_t first = 0;  ///< word index of the first occurrence
};

inline constexpr std::size_t kMaxPhraseWords = 3;

/// All 1-3 word phrases whose first and last words are not stopwords. Words must
/// be separated by exactly one space, so every phrase occurs verbatim in the
/// lowercased text. Ordered by first occurrence, shorter first.
inline std::vector<PhraseCandidate> phrase_candidates(std::string_view input) {
  const std::string lowered = text::lower(input);
  const auto spans = text::word_spans(lowered);
  std::map<std::string, std::size_t> slot;
  std::vector<PhraseCandidate> out;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    for (std::size_t n = 1; n <= kMaxPhraseWords && i + n <= spans.size(); ++n) {
      const std::size_t last = i + n - 1;
      if (n > 1) {
        const auto& prev = spans[last - 1];
        if (spans[last].begin != prev.end + 1 || lowered[prev.end] != ' ') break;
      }
      if (is_stopword(spans[i].word) || is_stopword(spans[last].word)) continue;
      std::string phrase = lowered.substr(spans[i].begin, spans[last].end - spans[i].begin);
      auto [it, inserted] = slot.emplace(phrase, out.size());
      if (inserted) {
        PhraseCandidate c{std::move(phrase), {}, 0, i};
        for (std::size_t k = i; k <= last; ++k) c.words.push_back(spans[k].word);
        out.push_back(std::move(c));
      }
      ++out[it->second].frequency;
    }
  }
  return out;
}

/// Mean IDF of the phrase's words times its frequency in the text.
inline double phrase_score(const PhraseCandidate& c, const DocumentStore& store) {
  double sum = 0.0;
  for (const auto& w : c.words) sum += store.idf(w);
  return sum / static_cast<double>(c.words.size()) * static_cast<double>(c.frequency);
}

/// Top-k keyphrases of `input`, lowercased. Ties go to the earlier phrase, then
/// to the longer one.
inline std::vector<std::string> extract_keyphrases(std::string_view input,
                                                   const DocumentStore& store, std::size_t k) {
  if (k < 1) throw InvalidArgument("keyphrase count must be >= 1");
  auto candidates = phrase_candidates(input);
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto& c : candidates) scores.push_back(phrase_score(c, store));
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (candidates[a].first != candidates[b].first) return candidates[a].first < candidates[b].first;
    return candidates[a].words.size() > candidates[b].words.size();
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < order.size() && out.size() < k; ++i) {
    out.push_back(candidates[order[i]].phrase);
  }
  return out;
}

}  // namespace kgen
