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
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "kgen/decoding/beam_search.hpp"

namespace kgen {

/// A phrase that must appear contiguously in every constrained hypothesis.
struct Constraint {
  TokenSequence phrase;
};

inline std::size_t total_constraint_tokens(std::span<const Constraint> constraints) {
  std::size_t n = 0;
  for (const auto& c : constraints) n += c.phrase.size();
  return n;
}

/// One cell entry of the grid: a partial hypothesis and how much of each
/// constraint it has placed. At most one constraint is in progress at a time.
struct GridBeamState {
  TokenSequence tokens;
  double log_prob = 0.0;
  std::vector<bool> done;
  int active = -1;        ///< constraint being generated, or -1 when open
  std::size_t progress = 0;  ///< tokens of `active` matched so far
  std::size_t placed = 0;    ///< grid row: constraint tokens placed

  bool all_done() const {
    return std::all_of(done.begin(), done.end(), [](bool d) { return d; });
  }

  auto key() const { return std::tie(tokens, done, active, progress); }
};

inline const TokenSequence& candidate_tokens(const GridBeamState& s) { return s.tokens; }
inline double candidate_log_prob(const GridBeamState& s) { return s.log_prob; }

namespace detail {

inline void check_constraints(std::span<const Constraint> constraints, const Vocabulary& vocab,
                              std::size_t max_len) {
  for (const auto& c : constraints) {
    if (c.phrase.empty()) throw InvalidArgument("constraint phrase must not be empty");
    for (TokenId t : c.phrase) {
      if (t < 0 || static_cast<std::size_t>(t) >= vocab.size()) {
        throw InvalidId("constraint token outside vocabulary");
      }
      if (t == Vocabulary::kBos || t == Vocabulary::kEos) {
        throw InvalidArgument("constraint phrase must not contain BOS or EOS");
      }
    }
  }
  const auto need = total_constraint_tokens(constraints);
  if (need > max_len) {
    throw InfeasibleConstraints("constraints need " + std::to_string(need) +
                                " tokens but max_len is " + std::to_string(max_len));
  }
}

/// All successor states of `s` after emitting `t`, excluding score bookkeeping.
inline void expand_coverage(const GridBeamState& s, TokenId t,
                            std::span<const Constraint> constraints,
                            std::vector<GridBeamState>& out) {
  GridBeamState base = s;
  base.tokens.push_back(t);
  if (base.active >= 0) {
    const auto& phrase = constraints[static_cast<std::size_t>(base.active)].phrase;
    if (phrase[base.progress] == t) {
      ++base.progress;
      ++base.placed;
      if (base.progress == phrase.size()) {
        base.done[static_cast<std::size_t>(base.active)] = true;
        base.active = -1;
        base.progress = 0;
      }
      out.push_back(std::move(base));
      return;
    }
    // abandon the partial phrase; `t` is then read as open generation
    base.placed -= base.progress;
    base.active = -1;
    base.progress = 0;
  }
  if (t != Vocabulary::kEos) {
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      if (base.done[i] || constraints[i].phrase.front() != t) continue;
      GridBeamState start = base;
      ++start.placed;
      if (constraints[i].phrase.size() == 1) {
        start.done[i] = true;
      } else {
        start.active = static_cast<int>(i);
        start.progress = 1;
      }
      out.push_back(std::move(start));
    }
  }
  out.push_back(std::move(base));
}

inline bool state_before(const GridBeamState& a, const GridBeamState& b) {
  if (a.log_prob != b.log_prob || a.tokens != b.tokens) {
    return better_scored(a.log_prob, a.tokens, b.log_prob, b.tokens);
  }
  return std::tie(a.done, a.active, a.progress) < std::tie(b.done, b.active, b.progress);
}

}  // namespace detail

/// Grid beam search for hard lexical constraints over any step function.
///
/// The grid is indexed by (timestep, constraint tokens placed); each row keeps its
/// own beam of `opt.beam` states. Open states either generate freely or start an
/// unfinished constraint whose first token matches; states inside a constraint
/// continue it or abandon it, which drops the row back by the abandoned progress.
/// Only states in the top row (every constraint complete) may finish.
template <class StepFn>
std::vector<Hypothesis> grid_beam_search_with(StepFn&& step, const Vocabulary& vocab,
                                              std::span<const TokenId> context,
                                              std::span<const Constraint> constraints,
                                              const DecodeOptions& opt,
                                              const std::string& provenance) {
  detail::check_options(opt);
  detail::check_constraints(constraints, vocab, opt.max_len);
  const std::size_t rows = total_constraint_tokens(constraints) + 1;

  GridBeamState root;
  root.done.assign(constraints.size(), false);
  std::vector<GridBeamState> live{root};
  std::vector<detail::BeamEntry> finished;

  for (std::size_t len = 1; len <= opt.max_len && !live.empty(); ++len) {
    std::vector<std::vector<GridBeamState>> grid(rows);
    std::vector<GridBeamState> successors;
    for (const auto& state : live) {
      const TokenDistribution dist = step(detail::join_prefix(context, state.tokens));
      for (std::size_t t = 0; t < dist.size(); ++t) {
        const double p = dist[t];
        if (p <= 0.0) continue;
        successors.clear();
        detail::expand_coverage(state, static_cast<TokenId>(t), constraints, successors);
        const double lp = state.log_prob + std::log(p);
        for (auto& s : successors) {
          s.log_prob = lp;
          grid[s.placed].push_back(std::move(s));
        }
      }
    }
    live.clear();
    for (auto& row : grid) {
      std::sort(row.begin(), row.end(), detail::state_before);
      row.erase(std::unique(row.begin(), row.end(),
                            [](const GridBeamState& a, const GridBeamState& b) {
                              return a.key() == b.key();
                            }),
                row.end());
      if (row.size() > opt.beam) row.resize(opt.beam);
      for (auto& s : row) {
        const bool ended = s.tokens.back() == Vocabulary::kEos || s.tokens.size() == opt.max_len;
        if (!ended) {
          live.push_back(std::move(s));
        } else if (s.all_done()) {
          finished.push_back({std::move(s.tokens), s.log_prob, 0.0});
        }
      }
    }
    std::vector<detail::BeamEntry> live_scores;
    live_scores.reserve(live.size());
    for (const auto& s : live) live_scores.push_back({{}, s.log_prob, 0.0});
    if (detail::finished_dominates(finished, live_scores, opt.beam)) break;
  }

  // different coverage paths can complete the same token sequence
  std::sort(finished.begin(), finished.end(), detail::entry_before);
  finished.erase(std::unique(finished.begin(), finished.end(),
                             [](const detail::BeamEntry& a, const detail::BeamEntry& b) {
                               return a.tokens == b.tokens;
                             }),
                 finished.end());
  return detail::finalize(std::move(finished), opt.beam, provenance, vocab);
}

inline std::vector<Hypothesis> grid_beam_search(const Generator& gen,
                                                std::span<const TokenId> context,
                                                std::span<const Constraint> constraints,
                                                const DecodeOptions& opt = {},
                                                const std::string& provenance = {}) {
  return grid_beam_search_with(
      [&](const TokenSequence& prefix) { return gen.next_step(prefix); }, gen.vocab(), context,
      constraints, opt, provenance.empty() ? gen.name() : provenance);
}

/// True when `phrase` occurs contiguously in `tokens`.
inline bool contains_phrase(const TokenSequence& tokens, const TokenSequence& phrase) {
  if (phrase.empty()) return true;
  return std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end()) != tokens.end();
}

}  // namespace kgen
