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
#include <string>
#include <vector>

#include "kgen/core/tokenize.hpp"

namespace kgen {

/// A finished candidate: tokens exclude BOS and end with EOS unless the decoder
/// stopped at its length limit.
struct Hypothesis {
  TokenSequence tokens;
  double log_prob = 0.0;
  std::string provenance;
  /// Surface text. Decoders fill it from the tokens; extractive and latent stages
  /// carry text that may contain out-of-vocabulary words.
  std::string text;

  bool operator==(const Hypothesis&) const = default;
};

inline const TokenSequence& candidate_tokens(const Hypothesis& h) { return h.tokens; }
inline double candidate_log_prob(const Hypothesis& h) { return h.log_prob; }

/// Score descending, then token ids lexicographically ascending.
inline bool better_scored(double lhs_score, const TokenSequence& lhs_tokens, double rhs_score,
                          const TokenSequence& rhs_tokens) {
  if (lhs_score != rhs_score) return lhs_score > rhs_score;
  return std::lexicographical_compare(lhs_tokens.begin(), lhs_tokens.end(), rhs_tokens.begin(),
                                      rhs_tokens.end());
}

inline void sort_hypotheses(std::vector<Hypothesis>& hyps) {
  std::stable_sort(hyps.begin(), hyps.end(), [](const Hypothesis& a, const Hypothesis& b) {
    return better_scored(a.log_prob, a.tokens, b.log_prob, b.tokens);
  });
}

inline Hypothesis make_hypothesis(TokenSequence tokens, double log_prob, std::string provenance,
                                  const Vocabulary& vocab) {
  Hypothesis h{std::move(tokens), log_prob, std::move(provenance), {}};
  h.text = detokenize(h.tokens, vocab);
  return h;
}

}  // namespace kgen
