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
#include <numeric>
#include <span>
#include <vector>

#include "kgen/decoding/hypothesis.hpp"
#include "kgen/generators/generator.hpp"

namespace kgen {

/// Mix of length-normalized primary and secondary log-probs:
/// (1 - alpha) * primary / len + alpha * secondary / len.
/// A zero-weighted side is ignored even when it is -inf.
inline double combined_prune_score(double primary, double secondary, std::size_t length,
                                   double alpha) {
  if (length == 0) return 0.0;
  const double n = static_cast<double>(length);
  double score = 0.0;
  if (alpha < 1.0) score += (1.0 - alpha) * (primary / n);
  if (alpha > 0.0) score += alpha * (secondary / n);
  return score;
}

/// Re-scores candidates with a secondary model acting as a discriminator and keeps
/// the best `keep`. Survivors keep their primary log-probs; the result is ordered by
/// combined score with ties broken by token ids.
///
/// `Candidate` needs `candidate_tokens(c)` and `candidate_log_prob(c)` overloads.
template <class Candidate>
std::vector<Candidate> cross_model_prune(std::vector<Candidate> candidates,
                                         const Generator& secondary,
                                         std::span<const TokenId> context, std::size_t keep,
                                         double alpha = 0.5) {
  if (keep < 1) throw InvalidArgument("prune keep must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("prune alpha must be in [0,1]");
  std::vector<double> combined(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& toks = candidate_tokens(candidates[i]);
    const double sec = alpha > 0.0 ? log_prob(secondary, context, toks) : 0.0;
    combined[i] = combined_prune_score(candidate_log_prob(candidates[i]), sec, toks.size(), alpha);
  }
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return better_scored(combined[a], candidate_tokens(candidates[a]), combined[b],
                         candidate_tokens(candidates[b]));
  });
  std::vector<Candidate> out;
  out.reserve(std::min(keep, candidates.size()));
  for (std::size_t i = 0; i < order.size() && out.size() < keep; ++i) {
    out.push_back(std::move(candidates[order[i]]));
  }
  return out;
}

}  // namespace kgen
