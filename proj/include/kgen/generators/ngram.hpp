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

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgen/core/tokenize.hpp"
#include "kgen/generators/generator.hpp"

namespace kgen {

/// Additively smoothed n-gram language model.
///
/// P(t | ctx) = (count(ctx, t) + delta) / (sum_t' count(ctx, t') + delta * (|V| - 1))
/// for every t other than BOS, which is never emitted. Contexts are the last
/// order-1 tokens of the BOS-padded prefix.
class NGramModel final : public Generator {
 public:
  using Context = std::vector<TokenId>;
  using CountTable = std::map<TokenId, std::uint64_t>;

  NGramModel(std::string name, VocabularyPtr vocab, int order, double delta)
      : name_(std::move(name)), vocab_(std::move(vocab)), order_(order), delta_(delta) {
    if (!vocab_) throw InvalidArgument("n-gram model needs a vocabulary");
    if (order_ < 1) throw InvalidArgument("n-gram order must be >= 1");
    if (!(delta_ > 0.0)) throw InvalidArgument("smoothing delta must be > 0");
  }

  const std::string& name() const override { return name_; }
  const Vocabulary& vocab() const override { return *vocab_; }
  const VocabularyPtr& vocab_ptr() const { return vocab_; }
  int order() const { return order_; }
  double delta() const { return delta_; }
  const std::map<Context, CountTable>& counts() const { return counts_; }

  std::uint64_t count(const Context& ctx, TokenId next) const {
    auto it = counts_.find(ctx);
    if (it == counts_.end()) return 0;
    auto jt = it->second.find(next);
    return jt == it->second.end() ? 0 : jt->second;
  }

  /// The (order-1)-token context the model conditions on for `prefix`.
  Context context_of(std::span<const TokenId> prefix) const {
    const std::size_t width = static_cast<std::size_t>(order_ - 1);
    Context ctx(width, Vocabulary::kBos);
    const std::size_t take = std::min(width, prefix.size());
    std::copy(prefix.end() - static_cast<std::ptrdiff_t>(take), prefix.end(),
              ctx.end() - static_cast<std::ptrdiff_t>(take));
    return ctx;
  }

  TokenDistribution next_step(std::span<const TokenId> prefix) const override {
    const std::size_t v = vocab_->size();
    std::vector<double> probs(v, 0.0);
    const auto ctx = context_of(prefix);
    std::uint64_t total = 0;
    const CountTable* table = nullptr;
    if (auto it = counts_.find(ctx); it != counts_.end()) {
      table = &it->second;
      total = totals_.at(ctx);
    }
    const double denom = static_cast<double>(total) + delta_ * static_cast<double>(v - 1);
    const double floor = delta_ / denom;
    for (std::size_t t = 0; t < v; ++t) {
      if (t == static_cast<std::size_t>(Vocabulary::kBos)) continue;
      probs[t] = floor;
    }
    if (table) {
      for (const auto& [tok, c] : *table) {
        probs[static_cast<std::size_t>(tok)] = (static_cast<double>(c) + delta_) / denom;
      }
    }
    return TokenDistribution(std::move(probs));
  }

  /// Adds one training sentence framed as BOS^(order-1) ... EOS.
  void observe(const TokenSequence& sentence) {
    TokenSequence framed(static_cast<std::size_t>(order_ - 1), Vocabulary::kBos);
    framed.insert(framed.end(), sentence.begin(), sentence.end());
    framed.push_back(Vocabulary::kEos);
    const std::size_t width = static_cast<std::size_t>(order_ - 1);
    for (std::size_t i = width; i < framed.size(); ++i) {
      Context ctx(framed.begin() + static_cast<std::ptrdiff_t>(i - width),
                  framed.begin() + static_cast<std::ptrdiff_t>(i));
      add_count(ctx, framed[i], 1);
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [ctx, table] : counts_) {
      nlohmann::json next = nlohmann::json::array();
      for (const auto& [tok, c] : table) next.push_back({tok, c});
      counts.push_back({{"context", ctx}, {"next", std::move(next)}});
    }
    return {{"format", "kgen-ngram"}, {"version", 1},          {"name", name_},
            {"order", order_},        {"delta", delta_},        {"vocab", vocab_->tokens()},
            {"counts", std::move(counts)}};
  }

  /// Restores a model saved by `to_json`; its vocabulary must equal `vocab`.
  static NGramModel from_json(const nlohmann::json& j, VocabularyPtr vocab) {
    if (j.value("format", "") != "kgen-ngram" || j.value("version", 0) != 1) {
      throw InvalidArgument("not a kgen-ngram v1 model");
    }
    if (j.at("vocab").get<std::vector<std::string>>() != vocab->tokens()) {
      throw InvalidArgument("model vocabulary differs from the shared vocabulary");
    }
    NGramModel m(j.at("name").get<std::string>(), std::move(vocab), j.at("order").get<int>(),
                 j.at("delta").get<double>());
    const auto v = static_cast<TokenId>(m.vocab_->size());
    for (const auto& entry : j.at("counts")) {
      auto ctx = entry.at("context").get<Context>();
      if (ctx.size() != static_cast<std::size_t>(m.order_ - 1)) {
        throw InvalidArgument("context length does not match model order");
      }
      for (const auto& pair : entry.at("next")) {
        const auto tok = pair.at(0).get<TokenId>();
        const auto c = pair.at(1).get<std::uint64_t>();
        if (tok < 0 || tok >= v || c == 0) throw InvalidArgument("bad count entry");
        m.add_count(ctx, tok, c);
      }
    }
    return m;
  }

  void save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write model file " + path);
    out << to_json().dump() << '\n';
  }

  static NGramModel load_file(const std::string& path, VocabularyPtr vocab) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open model file " + path);
    return from_json(nlohmann::json::parse(in), std::move(vocab));
  }

 private:
  void add_count(const Context& ctx, TokenId next, std::uint64_t c) {
    counts_[ctx][next] += c;
    totals_[ctx] += c;
  }

  std::string name_;
  VocabularyPtr vocab_;
  int order_;
  double delta_;
  std::map<Context, CountTable> counts_;
  std::map<Context, std::uint64_t> totals_;
};

/// Trains on one sentence per corpus entry; blank entries are skipped.
inline NGramModel train_ngram(const std::vector<std::string>& corpus, int order, double delta,
                              VocabularyPtr vocab, std::string name = "lm") {
  NGramModel model(std::move(name), vocab, order, delta);
  bool any = false;
  for (const auto& line : corpus) {
    auto seq = tokenize(line, *vocab);
    if (seq.empty()) continue;
    model.observe(seq);
    any = true;
  }
  if (!any) throw InvalidArgument("cannot train an n-gram model on an empty corpus");
  return model;
}

}  // namespace kgen
