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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kgen/decoding/hypothesis.hpp"
#include "kgen/decoding/interpolation.hpp"
#include "kgen/decoding/pruning.hpp"
#include "kgen/generators/generator.hpp"

namespace kgen {

struct DecodeOptions {
  std::size_t beam = 8;
  std::size_t max_len = 30;
};

namespace detail {

struct BeamEntry {
  TokenSequence tokens;
  double score = 0.0;
  double secondary = 0.0;  // only tracked by pruned search
};

inline bool entry_before(const BeamEntry& a, const BeamEntry& b) {
  return better_scored(a.score, a.tokens, b.score, b.tokens);
}

inline void check_options(const DecodeOptions& opt) {
  if (opt.beam < 1) throw InvalidArgument("beam must be >= 1");
  if (opt.max_len < 1) throw InvalidArgument("max_len must be >= 1");
}

inline TokenSequence join_prefix(std::span<const TokenId> context, const TokenSequence& tokens) {
  TokenSequence prefix(context.begin(), context.end());
  prefix.insert(prefix.end(), tokens.begin(), tokens.end());
  return prefix;
}

/// True when no live entry can still beat the beam-th finished one.
inline bool finished_dominates(std::vector<BeamEntry>& finished, const std::vector<BeamEntry>& live,
                               std::size_t beam) {
  if (finished.size() < beam || live.empty()) return live.empty();
  std::nth_element(finished.begin(), finished.begin() + static_cast<std::ptrdiff_t>(beam - 1),
                   finished.end(), entry_before);
  const double kth = finished[beam - 1].score;
  double best_live = kNegInf;
  for (const auto& e : live) best_live = std::max(best_live, e.score);
  // log-probs only decrease, so a strictly worse live entry can never overtake
  return best_live < kth;
}

inline std::vector<Hypothesis> finalize(std::vector<BeamEntry> finished, std::size_t beam,
                                        const std::string& provenance, const Vocabulary& vocab) {
  std::sort(finished.begin(), finished.end(), entry_before);
  if (finished.size() > beam) finished.resize(beam);
  std::vector<Hypothesis> out;
  out.reserve(finished.size());
  for (auto& e : finished) out.push_back(make_hypothesis(std::move(e.tokens), e.score, provenance, vocab));
  return out;
}

}  // namespace detail

/// Left-to-right beam search over an arbitrary step function `prefix -> distribution`.
///
/// Each step expands every live entry by every token with non-zero probability,
/// keeps the best `beam` expansions, and retires those ending in EOS or reaching
/// `max_len`. Ties are broken by token ids so the output is deterministic.
template <class StepFn>
std::vector<Hypothesis> beam_search_with(StepFn&& step, const Vocabulary& vocab,
                                         std::span<const TokenId> context,
                                         const DecodeOptions& opt, const std::string& provenance) {
  detail::check_options(opt);
  std::vector<detail::BeamEntry> live{{}};
  std::vector<detail::BeamEntry> finished;
  for (std::size_t len = 1; len <= opt.max_len && !live.empty(); ++len) {
    std::vector<detail::BeamEntry> candidates;
    for (const auto& entry : live) {
      const TokenDistribution dist = step(detail::join_prefix(context, entry.tokens));
      for (std::size_t t = 0; t < dist.size(); ++t) {
        const double p = dist[t];
        if (p <= 0.0) continue;
        detail::BeamEntry next{entry.tokens, entry.score + std::log(p), 0.0};
        next.tokens.push_back(static_cast<TokenId>(t));
        candidates.push_back(std::move(next));
      }
    }
    std::sort(candidates.begin(), candidates.end(), detail::entry_before);
    if (candidates.size() > opt.beam) candidates.resize(opt.beam);
    live.clear();
    for (auto& c : candidates) {
      if (c.tokens.back() == Vocabulary::kEos || c.tokens.size() == opt.max_len) {
        finished.push_back(std::move(c));
      } else {
        live.push_back(std::move(c));
      }
    }
    if (detail::finished_dominates(finished, live, opt.beam)) break;
  }
  return detail::finalize(std::move(finished), opt.beam, provenance, vocab);
}

/// Beam search on a single generator. At most `beam` hypotheses, best first.
inline std::vector<Hypothesis> beam_search(const Generator& gen, std::span<const TokenId> context,
                                           const DecodeOptions& opt = {},
                                           const std::string& provenance = {}) {
  return beam_search_with([&](const TokenSequence& prefix) { return gen.next_step(prefix); },
                          gen.vocab(), context, opt, provenance.empty() ? gen.name() : provenance);
}

inline void require_shared_vocabulary(std::span<const GeneratorPtr> gens) {
  if (gens.empty()) throw InvalidArgument("at least one generator is required");
  for (const auto& g : gens) {
    if (!g) throw InvalidArgument("null generator");
    if (&g->vocab() != &gens.front()->vocab() && !(g->vocab() == gens.front()->vocab())) {
      throw InvalidArgument("generator '" + g->name() + "' does not share the vocabulary of '" +
                            gens.front()->name() + "'");
    }
  }
}

/// Beam search where each step mixes every generator's next-token distribution
/// for the identical prefix.
inline std::vector<Hypothesis> interpolated_beam_search(std::span<const GeneratorPtr> gens,
                                                        std::span<const double> weights,
                                                        std::span<const TokenId> context,
                                                        const DecodeOptions& opt = {}) {
  require_shared_vocabulary(gens);
  if (weights.size() != gens.size()) throw InvalidArgument("one weight per generator is required");
  // validates the weights up front, even if decoding would stop before the first step
  {
    std::vector<TokenDistribution> probe(gens.size(), TokenDistribution(std::vector<double>{1.0}));
    interpolate_distributions(probe, weights);
  }
  // the same generator listed twice contributes once with the summed weight, so
  // a mixture of one model with itself decodes exactly like that model
  std::vector<const Generator*> distinct;
  std::vector<double> merged;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto it = std::find(distinct.begin(), distinct.end(), gens[i].get());
    if (it == distinct.end()) {
      distinct.push_back(gens[i].get());
      merged.push_back(weights[i]);
    } else {
      merged[static_cast<std::size_t>(it - distinct.begin())] += weights[i];
    }
  }
  auto step = [&](const TokenSequence& prefix) {
    if (distinct.size() == 1) return distinct.front()->next_step(prefix);
    std::vector<TokenDistribution> dists;
    dists.reserve(distinct.size());
    for (const auto* g : distinct) dists.push_back(g->next_step(prefix));
    return interpolate_distributions(dists, merged);
  };
  return beam_search_with(step, gens.front()->vocab(), context, opt, interpolation_label(gens));
}

/// Beam search whose per-step truncation uses the cross-model combined score,
/// so partial hypotheses the secondary model finds implausible are dropped early.
/// Finished hypotheses carry primary log-probs and are ordered by them.
inline std::vector<Hypothesis> pruned_beam_search(const Generator& primary,
                                                  const Generator& secondary, double alpha,
                                                  std::span<const TokenId> context,
                                                  const DecodeOptions& opt = {}) {
  detail::check_options(opt);
  if (!(primary.vocab() == secondary.vocab())) {
    throw InvalidArgument("pruning models must share a vocabulary");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("prune alpha must be in [0,1]");
  std::vector<detail::BeamEntry> live{{}};
  std::vector<detail::BeamEntry> finished;
  for (std::size_t len = 1; len <= opt.max_len && !live.empty(); ++len) {
    std::vector<detail::BeamEntry> candidates;
    for (const auto& entry : live) {
      const auto prefix = detail::join_prefix(context, entry.tokens);
      const auto dist = primary.next_step(prefix);
      const auto sec = secondary.next_step(prefix);
      for (std::size_t t = 0; t < dist.size(); ++t) {
        if (dist[t] <= 0.0) continue;
        detail::BeamEntry next{entry.tokens, entry.score + std::log(dist[t]),
                               sec[t] > 0.0 ? entry.secondary + std::log(sec[t]) : kNegInf};
        next.tokens.push_back(static_cast<TokenId>(t));
        candidates.push_back(std::move(next));
      }
    }
    std::vector<double> combined(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      combined[i] = combined_prune_score(candidates[i].score, candidates[i].secondary,
                                         candidates[i].tokens.size(), alpha);
    }
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return better_scored(combined[a], candidates[a].tokens, combined[b], candidates[b].tokens);
    });
    if (order.size() > opt.beam) order.resize(opt.beam);
    live.clear();
    for (std::size_t i : order) {
      auto& c = candidates[i];
      if (c.tokens.back() == Vocabulary::kEos || c.tokens.size() == opt.max_len) {
        finished.push_back(std::move(c));
      } else {
        live.push_back(std::move(c));
      }
    }
  }
  return detail::finalize(std::move(finished), opt.beam, primary.name(), primary.vocab());
}

}  // namespace kgen
