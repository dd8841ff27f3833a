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
#include <initializer_list>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgen/errors.hpp"

namespace kgen {

using TokenId = std::int32_t;

/// A sequence of token ids. Every id is < |V| of the vocabulary it came from.
using TokenSequence = std::vector<TokenId>;

/// Dense, immutable string <-> id mapping shared by every model of an engine.
///
/// Ids 0, 1 and 2 are always `<bos>`, `<eos>` and `<unk>`.
class Vocabulary {
 public:
  static constexpr TokenId kBos = 0;
  static constexpr TokenId kEos = 1;
  static constexpr TokenId kUnk = 2;
  static constexpr std::string_view kBosText = "<bos>";
  static constexpr std::string_view kEosText = "<eos>";
  static constexpr std::string_view kUnkText = "<unk>";

  Vocabulary() : Vocabulary(std::vector<std::string>{}) {}

  /// Builds from `words` in order; specials are prepended and duplicates dropped.
  explicit Vocabulary(const std::vector<std::string>& words) {
    add(std::string(kBosText));
    add(std::string(kEosText));
    add(std::string(kUnkText));
    for (const auto& w : words) {
      if (!w.empty()) add(w);
    }
  }

  Vocabulary(std::initializer_list<std::string> words)
      : Vocabulary(std::vector<std::string>(words)) {}

  std::size_t size() const { return tokens_.size(); }
  TokenId bos() const { return kBos; }
  TokenId eos() const { return kEos; }
  TokenId unk() const { return kUnk; }

  bool is_special(TokenId id) const { return id == kBos || id == kEos || id == kUnk; }
  bool contains(std::string_view token) const {
    return index_.find(std::string(token)) != index_.end();
  }

  /// Id for `token`, or UNK when absent.
  TokenId id(std::string_view token) const {
    auto it = index_.find(std::string(token));
    return it == index_.end() ? kUnk : it->second;
  }

  const std::string& token(TokenId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
      throw InvalidId("token id " + std::to_string(id) + " outside vocabulary of size " +
                      std::to_string(tokens_.size()));
    }
    return tokens_[static_cast<std::size_t>(id)];
  }

  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

  /// One token per line, line number = id.
  void save(std::ostream& out) const {
    for (const auto& t : tokens_) out << t << '\n';
  }

  static Vocabulary load(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
    if (lines.size() < 3 || lines[0] != kBosText || lines[1] != kEosText || lines[2] != kUnkText) {
      throw InvalidArgument("vocabulary file must start with <bos>, <eos>, <unk>");
    }
    Vocabulary v;
    for (std::size_t i = 3; i < lines.size(); ++i) {
      if (lines[i].empty() || v.contains(lines[i])) {
        throw InvalidArgument("vocabulary line " + std::to_string(i + 1) +
                              " is empty or duplicated");
      }
      v.add(lines[i]);
    }
    return v;
  }

  static Vocabulary load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open vocabulary file " + path);
    return load(in);
  }

 private:
  void add(std::string token) {
    if (index_.count(token)) return;
    index_.emplace(token, static_cast<TokenId>(tokens_.size()));
    tokens_.push_back(std::move(token));
  }

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

using VocabularyPtr = std::shared_ptr<const Vocabulary>;

}  // namespace kgen
