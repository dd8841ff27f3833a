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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgen/style/classifier.hpp"
#include "kgen/style/word_vectors.hpp"

namespace kgen {

struct SynonymConfig {
  double w_dict = 0.5;         ///< weight of the dictionary similarity, in [0,1]
  double sim_threshold = 0.6;  ///< minimum similarity for a synonym, in [-1,1]

  void check() const {
    if (!(w_dict >= 0.0 && w_dict <= 1.0)) throw InvalidArgument("w_dict must be in [0,1]");
    if (!(sim_threshold >= -1.0 && sim_threshold <= 1.0)) {
      throw InvalidArgument("sim_threshold must be in [-1,1]");
    }
  }
};

/// (1 - w_dict) * cosine(a, b) + w_dict * [b is a listed synonym of a].
/// The cosine term is 0 when either word has no vector.
inline double word_similarity(std::string_view a, std::string_view b, const WordVectors& wv,
                              const StyleLexicon& lex, const SynonymConfig& cfg) {
  const auto* va = wv.find(a);
  const auto* vb = wv.find(b);
  const double sim_vec = (va && vb) ? cosine(*va, *vb) : 0.0;
  const double sim_dict = lex.is_synonym(a, b) ? 1.0 : 0.0;
  return (1.0 - cfg.w_dict) * sim_vec + cfg.w_dict * sim_dict;
}

struct StylizedSynonym {
  std::string word;
  double similarity = 0.0;
  double style = 0.0;
};

/// Candidates at or above the similarity threshold, scored by the style
/// classifier; best style first, then best similarity. The query word itself is
/// never returned.
inline std::vector<StylizedSynonym> stylized_synonyms(std::string_view word,
                                                      const StyleClassifier& clf,
                                                      const std::vector<std::string>& candidates,
                                                      const WordVectors& wv,
                                                      const StyleLexicon& lex,
                                                      const SynonymConfig& cfg) {
  const std::string query = text::lower(word);
  std::vector<StylizedSynonym> out;
  std::set<std::string> seen;
  for (const auto& raw : candidates) {
    auto cand = text::lower(raw);
    if (cand == query || !seen.insert(cand).second) continue;
    const double sim = word_similarity(query, cand, wv, lex, cfg);
    if (sim < cfg.sim_threshold) continue;
    out.push_back({cand, sim, clf.intensity(cand)});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.style != b.style) return a.style > b.style;
    return a.similarity > b.similarity;
  });
  return out;
}

/// Everything needed to look up stylized synonyms.
struct SynonymResources {
  const WordVectors* vectors = nullptr;
  const StyleLexicon* lexicon = nullptr;
  const StyleClassifier* classifier = nullptr;
  SynonymConfig config;
};

/// Dictionary synonyms of `word` followed by every word with a vector.
inline std::vector<std::string> synonym_candidates(std::string_view word,
                                                   const SynonymResources& res) {
  const auto& listed = res.lexicon->synonyms(word);
  std::vector<std::string> out(listed.begin(), listed.end());
  const auto& all = res.vectors->words();
  out.insert(out.end(), all.begin(), all.end());
  return out;
}

/// The top stylized synonym of `word`, only if it is more stylized than `word`.
inline std::optional<StylizedSynonym> stylized_replacement(std::string_view word,
                                                           const SynonymResources& res) {
  const auto syns = stylized_synonyms(word, *res.classifier, synonym_candidates(word, res),
                                      *res.vectors, *res.lexicon, res.config);
  if (syns.empty() || !(syns.front().style > res.classifier->intensity(word))) return std::nullopt;
  return syns.front();
}

}  // namespace kgen
