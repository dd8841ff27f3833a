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

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgen/decoding/grid_beam_search.hpp"
#include "kgen/knowledge/extractive.hpp"
#include "kgen/knowledge/retrieval.hpp"
#include "kgen/pipelines/engine.hpp"
#include "kgen/ranking/ranker.hpp"
#include "kgen/style/keywords.hpp"

namespace kgen {

enum class ConstraintMode { hard, soft };

struct TurnRequest {
  /// Dialogue utterances (oldest first) or the document prefix.
  std::vector<std::string> context;
  std::optional<double> style_weight;  ///< config default when absent
  std::optional<std::size_t> top_n;    ///< config default when absent
  std::set<PassageSource> sources;     ///< empty admits every source
  std::vector<std::string> constraints;
  ConstraintMode mode = ConstraintMode::hard;
};

struct TurnResponse {
  std::vector<ScoredHypothesis> hypotheses;
  std::vector<KnowledgePassage> passages;
  std::optional<std::string> qa_answer;
  /// Wall time per stage in run order; empty when timings are disabled.
  std::vector<std::pair<std::string, double>> timings_ms;
  /// Degradations worth logging (failed search clients); not serialized.
  std::vector<std::string> warnings;
};

namespace detail {

class StageClock {
 public:
  StageClock(bool enabled, TurnResponse& out) : enabled_(enabled), out_(out) {}

  template <class Fn>
  void run(const char* stage, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    if (!enabled_) return;
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    out_.timings_ms.emplace_back(stage, ms.count());
  }

 private:
  bool enabled_;
  TurnResponse& out_;
};

struct TurnSettings {
  double style_weight;
  std::size_t top_n;
};

inline TurnSettings settle(const TurnRequest& req, const EngineConfig& cfg) {
  TurnSettings s{req.style_weight.value_or(cfg.style.default_weight), req.top_n.value_or(cfg.top_n)};
  if (!(s.style_weight >= 0.0 && s.style_weight <= 1.0)) {
    throw InvalidArgument("style_weight must be in [0,1]");
  }
  if (s.top_n < 1) throw InvalidArgument("top_n must be >= 1");
  for (const auto& c : req.context) {
    if (c.size() > 20000) throw InvalidArgument("context entries are limited to 20000 characters");
  }
  return s;
}

inline std::string document_prefix(const TurnRequest& req) {
  std::string prefix = text::join(req.context);
  if (text::trim(prefix).empty()) throw InvalidArgument("context must hold a non-empty prefix");
  return prefix;
}

inline bool style_active(const Engine& engine, double style_weight) {
  return engine.classifier() != nullptr && style_weight > 0.0;
}

inline void append(std::vector<Hypothesis>& to, std::vector<Hypothesis> from) {
  to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

inline void retrieve_grounded(const Engine& engine, const KnowledgeState& ks,
                              std::string_view query, const TurnRequest& req,
                              TurnResponse& out, std::vector<Hypothesis>* grounded) {
  if (ks.store.empty() && engine.search_clients().empty()) return;
  auto r = retrieve(query, ks.store, engine.search_clients(), engine.config().knowledge.top_k,
                    req.sources);
  out.passages = std::move(r.passages);
  for (auto& w : r.warnings) out.warnings.push_back(std::move(w));
  if (!grounded) return;
  for (const auto& p : out.passages) {
    grounded->push_back(extractive_answer(query, p, ks.store, *engine.vocab()));
  }
}

/// Soft-edit and soft-retrieval of every distinct earlier hypothesis; a style
/// weight s moves the result toward the stylized end (u = 1 - s).
inline std::vector<Hypothesis> stylize(const Engine& engine, const std::vector<Hypothesis>& prior,
                                       double style_weight) {
  const double u = 1.0 - style_weight;
  const auto res = engine.synonym_resources();
  std::vector<Hypothesis> out;
  std::set<std::string> seen;
  for (const auto& h : prior) {
    if (!seen.insert(text::normalize(h.text)).second) continue;
    out.push_back(soft_edit(h.text, *engine.codec(), u, res));
    out.push_back(soft_retrieval(h.text, *engine.stylized_index(), *engine.codec(), u));
  }
  return out;
}

inline Hypothesis text_hypothesis(std::string text, std::string provenance, const Engine& engine,
                                  double log_prob = 0.0) {
  Hypothesis h;
  h.tokens = engine.word_tokens(text);
  h.tokens.push_back(Vocabulary::kEos);
  h.log_prob = log_prob;
  h.provenance = std::move(provenance);
  h.text = std::move(text);
  return h;
}

inline void finish(const Engine& engine, const KnowledgeState& ks, std::vector<Hypothesis> hyps,
                   TokenSequence ranking_context, bool with_style, std::size_t top_n,
                   StageClock& clock, TurnResponse& out) {
  // smoothing gives <unk> a little mass; a suggestion containing it is useless
  std::erase_if(hyps, [](const Hypothesis& h) {
    return text::trim(h.text).empty() || h.text.find(Vocabulary::kUnkText) != std::string::npos;
  });
  clock.run("rank", [&] {
    RankingContext ctx{engine.ranking_model().get(), &ks.store,
                       with_style ? engine.classifier() : nullptr, std::move(ranking_context),
                       engine.config().repetition_n};
    out.hypotheses = rank(hyps, engine.config().weights, ctx, top_n);
  });
}

inline TokenSequence ranking_context(const Engine& engine, std::string_view utterance,
                                     std::string_view prefix) {
  return engine.context_for(engine.config().ranking_model, utterance, prefix);
}

}  // namespace detail

/// Conversational turn: conversational beams, grounded extractive answers,
/// optional cross-model integration, QA lookup, style transfer, unified ranking.
inline TurnResponse sherlock_respond(const Engine& engine, const TurnRequest& req) {
  const auto& cfg = engine.config();
  const auto settings = detail::settle(req, cfg);
  const auto convs = engine.conversational();
  if (convs.empty()) throw ConfigError("no conversational model is configured");
  const auto ks = engine.knowledge();
  const std::string query = req.context.empty() ? std::string{} : req.context.back();
  const bool styled = detail::style_active(engine, settings.style_weight);

  TurnResponse out;
  detail::StageClock clock(cfg.timings, out);
  std::vector<Hypothesis> hyps;

  const auto conv_context = engine.context_for(convs.front()->name(), query, "");
  clock.run("generate", [&] {
    for (const auto& g : convs) {
      detail::append(hyps, beam_search(*g, engine.context_for(g->name(), query, ""), cfg.decode));
    }
  });
  clock.run("retrieve", [&] { detail::retrieve_grounded(engine, *ks, query, req, out, &hyps); });
  if (ks->grounded && (cfg.integration.interpolate || cfg.integration.prune)) {
    clock.run("integrate", [&] {
      if (cfg.integration.interpolate) {
        const std::vector<GeneratorPtr> pair{convs.front(), ks->grounded};
        detail::append(hyps, interpolated_beam_search(pair, cfg.integration.weights, conv_context,
                                                      cfg.decode));
      }
      if (cfg.integration.prune) {
        detail::append(hyps, pruned_beam_search(*convs.front(), *ks->grounded,
                                                cfg.integration.alpha, conv_context, cfg.decode));
      }
    });
  }
  if (!ks->qa.empty()) {
    clock.run("qa", [&] {
      out.qa_answer = ks->qa.retrieve(query, cfg.qa_threshold);
      if (out.qa_answer) hyps.push_back(detail::text_hypothesis(*out.qa_answer, "qa", engine));
    });
  }
  if (styled) {
    clock.run("style", [&] { detail::append(hyps, detail::stylize(engine, hyps, settings.style_weight)); });
  }
  detail::finish(engine, *ks, std::move(hyps), detail::ranking_context(engine, query, ""), styled,
                 settings.top_n, clock, out);
  return out;
}

/// Next-sentence suggestions for a document prefix: LM beams, grounded
/// extractive suggestions, optional latent interpolation of the two leaders,
/// style transfer, unified ranking.
inline TurnResponse autocomplete(const Engine& engine, const TurnRequest& req) {
  const auto& cfg = engine.config();
  const auto settings = detail::settle(req, cfg);
  const std::string prefix = detail::document_prefix(req);
  const auto lm = engine.lm();
  if (!lm) throw ConfigError("no language model is configured");
  const auto ks = engine.knowledge();
  const bool styled = detail::style_active(engine, settings.style_weight);

  TurnResponse out;
  detail::StageClock clock(cfg.timings, out);
  std::vector<Hypothesis> hyps, grounded;

  clock.run("generate", [&] {
    hyps = beam_search(*lm, engine.context_for(lm->name(), "", prefix), cfg.decode);
  });
  clock.run("retrieve", [&] { detail::retrieve_grounded(engine, *ks, prefix, req, out, &grounded); });
  if (cfg.integration.latent_interp && !hyps.empty() && !grounded.empty()) {
    clock.run("latent_interp", [&] {
      const auto& codec = *engine.codec();
      const auto z = interpolate_latent(codec.encode(hyps.front().text),
                                        codec.encode(grounded.front().text), cfg.integration.latent_u);
      hyps.push_back(detail::text_hypothesis(codec.decode(z), "latent_interp", engine));
    });
  }
  detail::append(hyps, std::move(grounded));
  if (styled) {
    clock.run("style", [&] { detail::append(hyps, detail::stylize(engine, hyps, settings.style_weight)); });
  }
  detail::finish(engine, *ks, std::move(hyps), detail::ranking_context(engine, "", prefix), styled,
                 settings.top_n, clock, out);
  return out;
}

/// Constraint phrases as token sequences, each word first swapped for its
/// stylized synonym when style is active. Words outside the vocabulary make the
/// constraint unsatisfiable.
inline std::vector<Constraint> constraint_phrases(const Engine& engine,
                                                  const std::vector<std::string>& constraints,
                                                  bool styled) {
  std::vector<Constraint> out;
  const auto res = engine.synonym_resources();
  for (const auto& c : constraints) {
    Constraint phrase;
    for (auto w : text::words(c)) {
      if (styled) {
        if (auto rep = stylized_replacement(w, res)) w = rep->word;
      }
      const TokenId id = engine.vocab()->id(w);
      if (id == Vocabulary::kUnk) {
        throw InfeasibleConstraints("constraint word '" + w + "' is outside the model vocabulary");
      }
      phrase.phrase.push_back(id);
    }
    if (phrase.phrase.empty()) throw InvalidArgument("constraint '" + c + "' has no words");
    out.push_back(std::move(phrase));
  }
  return out;
}

/// Suggestions steered by topic phrases. Hard mode guarantees every phrase via
/// grid beam search. Soft mode is a codec stand-in: the corpus sentence nearest
/// to the selected keywords, interpolated toward the top LM suggestion.
inline TurnResponse constrained_suggest(const Engine& engine, const TurnRequest& req) {
  if (req.constraints.empty()) return autocomplete(engine, req);
  const auto& cfg = engine.config();
  const auto settings = detail::settle(req, cfg);
  const std::string prefix = detail::document_prefix(req);
  const auto lm = engine.lm();
  if (!lm) throw ConfigError("no language model is configured");
  const auto ks = engine.knowledge();
  const bool styled = detail::style_active(engine, settings.style_weight);
  const auto context = engine.context_for(lm->name(), "", prefix);

  TurnResponse out;
  detail::StageClock clock(cfg.timings, out);
  std::vector<Hypothesis> hyps;

  if (req.mode == ConstraintMode::hard) {
    const auto phrases = constraint_phrases(engine, req.constraints, styled);
    clock.run("generate", [&] {
      hyps = grid_beam_search(*lm, context, phrases, cfg.decode, "gbs");
    });
    clock.run("retrieve", [&] { detail::retrieve_grounded(engine, *ks, prefix, req, out, nullptr); });
  } else {
    if (!engine.codec()) throw ConfigError("soft constraints need word vectors");
    for (const auto& c : req.constraints) {
      if (text::words(c).empty()) throw InvalidArgument("constraint '" + c + "' has no words");
    }
    clock.run("generate", [&] { hyps = beam_search(*lm, context, cfg.decode); });
    clock.run("retrieve", [&] { detail::retrieve_grounded(engine, *ks, prefix, req, out, nullptr); });
    if (!hyps.empty()) {
      clock.run("soft_constraint", [&] {
        const auto& codec = *engine.codec();
        const auto keywords = select_keywords(text::join(req.constraints), ks->store,
                                              cfg.integration.soft_keywords, cfg.seed);
        const auto anchor = codec.decode(codec.encode(text::join(keywords)));
        const auto z = interpolate_latent(codec.encode(anchor), codec.encode(hyps.front().text),
                                          cfg.integration.latent_u);
        hyps.push_back(detail::text_hypothesis(codec.decode(z), "soft_constraint", engine));
      });
    }
  }
  detail::finish(engine, *ks, std::move(hyps), detail::ranking_context(engine, "", prefix), styled,
                 settings.top_n, clock, out);
  return out;
}

}  // namespace kgen
