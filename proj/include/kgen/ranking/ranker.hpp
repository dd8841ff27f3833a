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
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgen/decoding/hypothesis.hpp"
#include "kgen/generators/generator.hpp"
#include "kgen/knowledge/document_store.hpp"
#include "kgen/style/classifier.hpp"

namespace kgen {

/// |unique n-grams| / |n-grams|; 1 when the sequence is shorter than n.
template <class T>
double repetition_score(std::span<const T> seq, std::size_t n = 2) {
  if (n < 1) throw InvalidArgument("n-gram order must be >= 1");
  if (seq.size() < n) return 1.0;
  std::set<std::vector<T>> unique;
  const std::size_t total = seq.size() - n + 1;
  for (std::size_t i = 0; i < total; ++i) unique.emplace(seq.begin() + i, seq.begin() + i + n);
  return static_cast<double>(unique.size()) / static_cast<double>(total);
}

template <class T>
double repetition_score(const std::vector<T>& seq, std::size_t n = 2) {
  return repetition_score(std::span<const T>(seq), n);
}

/// Mean IDF of the words; words unseen by the store get its maximum IDF.
inline double informativeness_score(const std::vector<std::string>& words,
                                    const DocumentStore& store) {
  if (words.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& w : words) sum += store.idf(w);
  return sum / static_cast<double>(words.size());
}

/// Per-token mean log-probability of `tokens` after `context`.
inline double likelihood_score(const Generator& gen, std::span<const TokenId> context,
                               std::span<const TokenId> tokens) {
  if (tokens.empty()) return 0.0;
  return log_prob(gen, context, tokens) / static_cast<double>(tokens.size());
}

struct RankerWeights {
  double likelihood = 1.0;
  double informativeness = 1.0;
  double repetition = 1.0;
  double style = 1.0;

  void check() const {
    for (double w : {likelihood, informativeness, repetition, style}) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("ranker weights must be >= 0");
    }
    if (likelihood + informativeness + repetition + style <= 0.0) {
      throw InvalidArgument("at least one ranker weight must be positive");
    }
  }
};

struct CriterionScores {
  double likelihood = 0.0;
  double informativeness = 0.0;
  double repetition = 1.0;
  double style = 0.0;

  bool operator==(const CriterionScores&) const = default;
};

struct ScoredHypothesis {
  Hypothesis hypothesis;
  CriterionScores scores;      ///< raw criterion values
  CriterionScores normalized;  ///< min-max normalized across the candidate set
  double total = 0.0;          ///< weighted sum of the normalized values
};

/// What the ranker scores with. `classifier` is optional; without it the style
/// criterion is reported as 0 and left out of the total.
struct RankingContext {
  const Generator* ranking_model = nullptr;
  const DocumentStore* store = nullptr;
  const StyleClassifier* classifier = nullptr;
  TokenSequence context;
  std::size_t repetition_n = 2;
};

namespace detail {

/// Min-max normalization; a constant criterion maps to 0.5 and -inf maps to 0.
inline std::vector<double> min_max(const std::vector<double>& xs) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double x : xs) {
    if (!std::isfinite(x)) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      out[i] = 0.0;
    } else if (hi > lo) {
      out[i] = (xs[i] - lo) / (hi - lo);
    } else {
      out[i] = 0.5;
    }
  }
  return out;
}

}  // namespace detail

/// Unified ranking of hypotheses from every model and strategy.
///
/// Identical texts are merged first (the copy with the highest own log-prob is
/// kept). Each criterion is then scored, min-max normalized across the set, and
/// combined with the weights. Output is best first, ties in input order, cut to
/// `top_n`.
inline std::vector<ScoredHypothesis> rank(const std::vector<Hypothesis>& hyps,
                                          const RankerWeights& weights, const RankingContext& ctx,
                                          std::size_t top_n) {
  if (top_n < 1) throw InvalidArgument("top_n must be >= 1");
  weights.check();
  if (!ctx.ranking_model || !ctx.store) throw InvalidArgument("ranking context is incomplete");
  if (hyps.empty()) return {};

  std::vector<ScoredHypothesis> pool;
  std::unordered_map<std::string, std::size_t> slot;
  for (const auto& h : hyps) {
    const auto key = text::normalize(h.text);
    auto [it, inserted] = slot.emplace(key, pool.size());
    if (inserted) {
      pool.push_back({h, {}, {}, 0.0});
    } else if (h.log_prob > pool[it->second].hypothesis.log_prob) {
      pool[it->second].hypothesis = h;
    }
  }

  const auto& vocab = ctx.ranking_model->vocab();
  std::vector<double> lik, inf, rep, sty;
  for (auto& s : pool) {
    // word-level ids, as the vocabulary is built from words; "delay." is "delay"
    const auto words = text::words(s.hypothesis.text);
    TokenSequence tokens;
    for (const auto& w : words) tokens.push_back(vocab.id(w));
    tokens.push_back(Vocabulary::kEos);
    s.scores.likelihood = likelihood_score(*ctx.ranking_model, ctx.context, tokens);
    s.scores.informativeness = informativeness_score(words, *ctx.store);
    s.scores.repetition = repetition_score(words, ctx.repetition_n);
    s.scores.style = ctx.classifier ? ctx.classifier->intensity(s.hypothesis.text) : 0.0;
    lik.push_back(s.scores.likelihood);
    inf.push_back(s.scores.informativeness);
    rep.push_back(s.scores.repetition);
    sty.push_back(s.scores.style);
  }
  const auto nl = detail::min_max(lik), ni = detail::min_max(inf), nr = detail::min_max(rep),
             ns = detail::min_max(sty);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    auto& s = pool[i];
    s.normalized = {nl[i], ni[i], nr[i], ctx.classifier ? ns[i] : 0.0};
    s.total = weights.likelihood * nl[i] + weights.informativeness * ni[i] +
              weights.repetition * nr[i];
    if (ctx.classifier) s.total += weights.style * ns[i];
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const auto& a, const auto& b) { return a.total > b.total; });
  if (pool.size() > top_n) pool.resize(top_n);
  return pool;
}

}  // namespace kgen
