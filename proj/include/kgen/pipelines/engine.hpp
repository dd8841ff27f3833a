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

#include <filesystem>
#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgen/generators/masked.hpp"
#include "kgen/generators/ngram.hpp"
#include "kgen/generators/registry.hpp"
#include "kgen/knowledge/qa.hpp"
#include "kgen/knowledge/search_client.hpp"
#include "kgen/knowledge/stopwords.hpp"
#include "kgen/pipelines/config.hpp"
#include "kgen/style/transfer.hpp"

namespace kgen {

/// Everything the ingestion endpoints can change. Built whole and swapped in;
/// requests keep the snapshot they started with.
struct KnowledgeState {
  std::vector<SourceText> documents;
  DocumentStore store;
  GeneratorPtr grounded;  ///< n-gram over the passages; null when the store is empty
  QaIndex qa;
};

/// Token separating utterance from response in dialog models.
inline constexpr const char* kTurnSeparator = "<sep>";

namespace detail {

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!text::trim(line).empty()) out.push_back(line);
  }
  return out;
}

inline std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<std::string> words_of_file(const std::filesystem::path& path) {
  std::vector<std::string> out;
  for (const auto& line : read_lines(path)) {
    for (auto& w : text::words(line)) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace detail

class Engine {
 public:
  explicit Engine(EngineConfig cfg) : cfg_(std::move(cfg)) {
    try {
      build();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }

  static std::unique_ptr<Engine> load(const std::filesystem::path& config_path) {
    return std::make_unique<Engine>(EngineConfig::load_file(config_path));
  }

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const EngineConfig& config() const { return cfg_; }
  const VocabularyPtr& vocab() const { return vocab_; }
  const GeneratorRegistry& registry() const { return registry_; }

  /// Conversational generators in config order.
  std::vector<GeneratorPtr> conversational() const {
    std::vector<GeneratorPtr> out;
    for (const auto& n : cfg_.conversational) out.push_back(registry_.get(n));
    return out;
  }
  GeneratorPtr lm() const { return cfg_.lm.empty() ? nullptr : registry_.get(cfg_.lm); }
  /// Unmasked, so it prices every text it is asked about.
  GeneratorPtr ranking_model() const { return ngrams_.at(cfg_.ranking_model); }

  bool is_dialog(const std::string& model) const { return dialog_models_.count(model) > 0; }

  /// Null unless style is enabled.
  const StyleClassifier* classifier() const { return classifier_ ? &*classifier_ : nullptr; }
  /// Null when no word vectors are configured.
  const LatentCodec* codec() const { return codec_.get(); }
  const SentenceIndex* stylized_index() const { return stylized_index_.get(); }

  SynonymResources synonym_resources() const {
    return {vectors_.get(), &lexicon_, classifier(), cfg_.synonyms};
  }

  const std::vector<SearchClientPtr>& search_clients() const { return clients_; }

  std::shared_ptr<const KnowledgeState> knowledge() const {
    std::lock_guard lock(state_mu_);
    return knowledge_;
  }

  /// Adds documents (or replaces all of them) and swaps in a rebuilt store.
  /// Returns the passage count of the new store.
  std::size_t ingest(std::vector<SourceText> docs, bool replace = false) {
    std::lock_guard writer(write_mu_);
    auto next = std::make_shared<KnowledgeState>(*knowledge());
    if (replace) next->documents.clear();
    for (auto& d : docs) next->documents.push_back(std::move(d));
    rebuild_store(*next);
    const std::size_t n = next->store.size();
    publish(std::move(next));
    return n;
  }

  /// Adds QA pairs (or replaces the corpus). Returns the new pair count.
  std::size_t load_qa(std::vector<QAPair> pairs, bool replace = false) {
    std::lock_guard writer(write_mu_);
    auto next = std::make_shared<KnowledgeState>(*knowledge());
    std::vector<QAPair> all = replace ? std::vector<QAPair>{} : next->qa.pairs();
    all.insert(all.end(), std::make_move_iterator(pairs.begin()),
               std::make_move_iterator(pairs.end()));
    next->qa = QaIndex(std::move(all));
    const std::size_t n = next->qa.pairs().size();
    publish(std::move(next));
    return n;
  }

  /// Token ids of the words of `s`; words outside the vocabulary become UNK.
  TokenSequence word_tokens(std::string_view s) const {
    TokenSequence out;
    for (const auto& w : text::words(s)) out.push_back(vocab_->id(w));
    return out;
  }

  /// Decoding context for `model`. Dialog models see a keyword of the last
  /// utterance and the turn separator; plain LMs see the longest tail of the
  /// unfinished last sentence of `prefix` they were trained on (an unseen
  /// context would give a flat distribution).
  TokenSequence context_for(const std::string& model, std::string_view utterance,
                            std::string_view prefix) const {
    if (is_dialog(model)) return dialog_context(model, utterance);
    const auto trimmed = text::trim(prefix);
    if (trimmed.empty()) return {};
    const char last = trimmed.back();
    if (last == '.' || last == '?' || last == '!') return {};
    const auto sentences = text::split_sentences(trimmed);
    const auto words = word_tokens(sentences.back());
    const auto& ngram = *ngrams_.at(model);
    const std::size_t longest = std::min(words.size(), static_cast<std::size_t>(ngram.order() - 1));
    for (std::size_t k = longest; k > 0; --k) {
      const TokenSequence tail(words.end() - static_cast<std::ptrdiff_t>(k), words.end());
      if (std::find(tail.begin(), tail.end(), Vocabulary::kUnk) != tail.end()) continue;
      if (ngram.counts().count(ngram.context_of(tail))) return tail;
    }
    return {};
  }

 private:
  /// Dialog models learn `keyword <sep> response`, where the keyword is the last
  /// content word of the utterance, and also `<sep> response` as a fallback. At
  /// decode time the latest utterance word the model has a keyword context for
  /// is used, falling back to the bare separator.
  static std::vector<std::string> keyword_candidates(std::string_view utterance) {
    const auto ws = text::words(utterance);
    std::vector<std::string> out;
    for (auto it = ws.rbegin(); it != ws.rend(); ++it) {
      if (!is_stopword(*it)) out.push_back(*it);
    }
    for (auto it = ws.rbegin(); it != ws.rend(); ++it) {
      if (is_stopword(*it)) out.push_back(*it);
    }
    return out;
  }

  TokenSequence dialog_context(const std::string& model, std::string_view utterance) const {
    const TokenId sep = vocab_->id(kTurnSeparator);
    const auto& ngram = *ngrams_.at(model);
    for (const auto& w : keyword_candidates(utterance)) {
      const TokenId id = vocab_->id(w);
      if (id == Vocabulary::kUnk) continue;
      const TokenSequence ctx{id, sep};
      if (ngram.counts().count(ngram.context_of(ctx))) return ctx;
    }
    return {sep};
  }

  void build() {
    std::set<std::string> words;
    struct Loaded {
      const ModelSpec* spec;
      std::vector<std::pair<std::string, std::string>> lines;  // (utterance, response)
    };
    std::vector<Loaded> loaded;
    for (const auto& m : cfg_.models) {
      Loaded l{&m, {}};
      for (const auto& path : m.corpora) {
        for (const auto& line : detail::read_lines(path)) {
          const auto tab = line.find('\t');
          if (m.kind == "dialog") {
            if (tab == std::string::npos) {
              throw ConfigError("dialog corpus " + path.string() + " has a line without a tab");
            }
            l.lines.emplace_back(line.substr(0, tab), line.substr(tab + 1));
          } else {
            std::stringstream fields(line);
            std::string field;
            while (std::getline(fields, field, '\t')) l.lines.emplace_back(std::string{}, field);
          }
        }
      }
      for (const auto& [utterance, response] : l.lines) {
        for (const auto* part : {&utterance, &response}) {
          for (auto& w : text::words(*part)) words.insert(std::move(w));
        }
      }
      loaded.push_back(std::move(l));
    }

    std::vector<std::string> stylized, neutral;
    if (cfg_.style.enabled) {
      if (cfg_.style.stylized_corpus.empty() || cfg_.style.neutral_corpus.empty() ||
          cfg_.style.lexicon.empty() || !cfg_.vectors) {
        throw ConfigError("style needs stylized_corpus, neutral_corpus, lexicon and vectors");
      }
      stylized = detail::read_lines(cfg_.style.stylized_corpus);
      neutral = detail::read_lines(cfg_.style.neutral_corpus);
      std::ifstream lex(cfg_.style.lexicon);
      if (!lex) throw ConfigError("cannot open " + cfg_.style.lexicon.string());
      lexicon_ = StyleLexicon::load(lex);
      for (const auto* corpus : {&stylized, &neutral}) {
        for (const auto& s : *corpus) {
          for (auto& w : text::words(s)) words.insert(std::move(w));
        }
      }
      for (auto& w : detail::words_of_file(cfg_.style.lexicon)) words.insert(std::move(w));
    }

    std::vector<SourceText> docs;
    for (const auto& d : cfg_.knowledge.documents) {
      docs.push_back({detail::read_all(d.path), d.source});
      for (auto& w : text::words(docs.back().text)) words.insert(std::move(w));
    }

    std::vector<std::string> vocab_words(words.begin(), words.end());
    bool any_dialog = false;
    for (const auto& m : cfg_.models) any_dialog |= m.kind == "dialog";
    if (any_dialog) vocab_words.push_back(kTurnSeparator);
    vocab_ = std::make_shared<const Vocabulary>(vocab_words);

    const TokenId sep = vocab_->id(kTurnSeparator);
    for (const auto& l : loaded) {
      auto model = std::make_shared<NGramModel>(l.spec->name, vocab_, l.spec->order, l.spec->delta);
      std::size_t observed = 0;
      for (const auto& [utterance, response] : l.lines) {
        const auto resp = word_tokens(response);
        if (resp.empty()) continue;
        TokenSequence seq;
        if (l.spec->kind == "dialog") {
          seq.push_back(sep);
          seq.insert(seq.end(), resp.begin(), resp.end());
          model->observe(seq);
          const auto keys = keyword_candidates(utterance);
          if (!keys.empty()) {
            seq.insert(seq.begin(), vocab_->id(keys.front()));
            model->observe(seq);
          }
        } else {
          model->observe(resp);
        }
        ++observed;
      }
      if (observed == 0) throw ConfigError("corpus of model '" + l.spec->name + "' is empty");
      if (l.spec->kind == "dialog") dialog_models_.insert(l.spec->name);
      ngrams_[l.spec->name] = model;
      registry_.add(without_unk(model));
    }

    if (cfg_.conversational.empty()) {
      for (const auto& m : cfg_.models) {
        if (m.kind == "dialog") cfg_.conversational.push_back(m.name);
      }
    }
    if (cfg_.lm.empty()) {
      for (const auto& m : cfg_.models) {
        if (m.kind == "lm") {
          cfg_.lm = m.name;
          break;
        }
      }
    }
    if (cfg_.ranking_model.empty()) {
      cfg_.ranking_model = cfg_.lm.empty() ? cfg_.models.front().name : cfg_.lm;
    }
    for (const auto& n : cfg_.conversational) {
      if (!registry_.contains(n)) throw ConfigError("unknown conversational model '" + n + "'");
    }
    for (const auto* n : {&cfg_.lm, &cfg_.ranking_model}) {
      if (!n->empty() && !registry_.contains(*n)) {
        throw ConfigError("unknown model '" + *n + "'");
      }
    }

    if (cfg_.vectors) {
      std::ifstream in(*cfg_.vectors);
      if (!in) throw ConfigError("cannot open " + cfg_.vectors->string());
      vectors_ = std::make_shared<const WordVectors>(WordVectors::load(in));
      std::vector<std::string> lm_sentences;
      for (const auto& l : loaded) {
        if (l.spec->name != cfg_.lm) continue;
        for (const auto& line : l.lines) lm_sentences.push_back(line.second);
      }
      std::vector<std::string> corpus;
      std::set<std::string> seen;
      for (const auto* part : {&stylized, &neutral, &lm_sentences}) {
        for (const auto& s : *part) {
          if (seen.insert(text::normalize(s)).second) corpus.push_back(s);
        }
      }
      if (corpus.empty()) throw ConfigError("latent codec needs sentences from some corpus");
      codec_ = std::make_shared<const BaselineCodec>(std::move(corpus), vectors_);
    } else if (cfg_.integration.latent_interp) {
      throw ConfigError("integration.latent_interp needs word vectors");
    }
    if (cfg_.style.enabled) {
      classifier_ = train_style_classifier(stylized, neutral);
      stylized_index_ = std::make_unique<SentenceIndex>(stylized, *codec_);
    }

    if (cfg_.knowledge.search_fixture) {
      clients_.push_back(std::make_shared<FixtureSearchClient>(
          FixtureSearchClient::load_file("fixture", cfg_.knowledge.search_fixture->string())));
    }

    auto state = std::make_shared<KnowledgeState>();
    state->documents = std::move(docs);
    rebuild_store(*state);
    if (cfg_.qa_corpus) {
      std::ifstream in(*cfg_.qa_corpus);
      if (!in) throw ConfigError("cannot open " + cfg_.qa_corpus->string());
      state->qa = QaIndex(parse_qa_tsv(in));
    }
    knowledge_ = std::move(state);
  }

  void rebuild_store(KnowledgeState& s) const {
    s.store = kgen::ingest(s.documents);
    s.grounded = nullptr;
    if (s.store.empty()) return;
    auto g = std::make_shared<NGramModel>("grounded_lm", vocab_, cfg_.knowledge.grounded_order,
                                          cfg_.knowledge.grounded_delta);
    for (const auto& p : s.store.passages()) {
      for (const auto& sentence : text::split_sentences(p.text)) {
        auto seq = word_tokens(sentence);
        if (!seq.empty()) g->observe(seq);
      }
    }
    s.grounded = without_unk(std::move(g));
  }

  // smoothing gives <unk> a little mass; a suggestion containing it is useless
  static GeneratorPtr without_unk(GeneratorPtr g) {
    return std::make_shared<MaskedGenerator>(std::move(g), std::set<TokenId>{Vocabulary::kUnk});
  }

  void publish(std::shared_ptr<const KnowledgeState> next) {
    std::lock_guard lock(state_mu_);
    knowledge_ = std::move(next);
  }

  EngineConfig cfg_;
  VocabularyPtr vocab_;
  GeneratorRegistry registry_;
  std::set<std::string> dialog_models_;
  std::map<std::string, std::shared_ptr<const NGramModel>> ngrams_;  // unmasked, for context lookup

  StyleLexicon lexicon_;
  std::shared_ptr<const WordVectors> vectors_;
  std::optional<StyleClassifier> classifier_;
  LatentCodecPtr codec_;
  std::unique_ptr<SentenceIndex> stylized_index_;

  std::vector<SearchClientPtr> clients_;

  mutable std::mutex state_mu_;  // guards the knowledge_ pointer only
  std::mutex write_mu_;          // serializes ingestion
  std::shared_ptr<const KnowledgeState> knowledge_;
};

}  // namespace kgen
