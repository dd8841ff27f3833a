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

#include <cmath>
#include <set>
#include <string>
#include <string_view>

#include "kgen/decoding/hypothesis.hpp"
#include "kgen/generators/generator.hpp"
#include "kgen/knowledge/document_store.hpp"

namespace kgen {

/// Grounded answer by extraction: the passage sentence with the largest
/// IDF-weighted overlap with the query words (earliest wins ties).
///
/// log_prob is ln(s / (1 + s)) for the overlap normalized by the query's total
/// IDF mass, so zero overlap maps to -inf.
inline Hypothesis extractive_answer(std::string_view query, const KnowledgePassage& passage,
                                    const DocumentStore& store, const Vocabulary& vocab) {
  const auto sentences = text::split_sentences(passage.text);
  if (sentences.empty()) throw InvalidArgument("cannot extract from an empty passage");
  std::set<std::string> qwords;
  for (auto& w : text::words(query)) qwords.insert(std::move(w));
  double mass = 0.0;
  for (const auto& w : qwords) mass += store.idf(w);

  std::size_t best = 0;
  double best_overlap = -1.0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::set<std::string> swords;
    for (auto& w : text::words(sentences[i])) swords.insert(std::move(w));
    double overlap = 0.0;
    for (const auto& w : qwords) {
      if (swords.count(w)) overlap += store.idf(w);
    }
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = i;
    }
  }
  const double score = mass > 0.0 ? best_overlap / mass : 0.0;
  Hypothesis h;
  h.text = sentences[best];
  h.tokens = tokenize(h.text, vocab);
  h.tokens.push_back(Vocabulary::kEos);
  h.log_prob = score > 0.0 ? std::log(score / (1.0 + score)) : kNegInf;
  h.provenance = "grounded";
  return h;
}

}  // namespace kgen
