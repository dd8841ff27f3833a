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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgen/core/text.hpp"
#include "kgen/errors.hpp"

namespace kgen {

enum class PassageSource { web_snippet, news_snippet, specialized_site, user_document, user_kb };

inline std::string_view to_string(PassageSource s) {
  switch (s) {
    case PassageSource::web_snippet: return "web_snippet";
    case PassageSource::news_snippet: return "news_snippet";
    case PassageSource::specialized_site: return "specialized_site";
    case PassageSource::user_document: return "user_document";
    case PassageSource::user_kb: return "user_kb";
  }
  return "user_kb";
}

inline std::optional<PassageSource> parse_passage_source(std::string_view s) {
  for (auto src : {PassageSource::web_snippet, PassageSource::news_snippet,
                   PassageSource::specialized_site, PassageSource::user_document,
                   PassageSource::user_kb}) {
    if (to_string(src) == s) return src;
  }
  return std::nullopt;
}

struct KnowledgePassage {
  std::string text;
  PassageSource source = PassageSource::user_kb;
  std::optional<int> source_rank;
  double relevance = 0.0;

  bool operator==(const KnowledgePassage&) const = default;
};

/// Passages longer than this are split at sentence boundaries.
inline constexpr std::size_t kMaxPassageChars = 600;

/// Splits a document into passages: blank lines separate paragraphs, and long
/// paragraphs are packed greedily from whole sentences up to kMaxPassageChars.
/// A single sentence longer than the cap stays whole.
inline std::vector<std::string> split_passages(std::string_view document) {
  std::vector<std::string> out;
  for (auto& para : text::split_paragraphs(document)) {
    if (para.size() <= kMaxPassageChars) {
      out.push_back(std::move(para));
      continue;
    }
    std::string chunk;
    for (auto& sentence : text::split_sentences(para)) {
      if (!chunk.empty() && chunk.size() + 1 + sentence.size() > kMaxPassageChars) {
        out.push_back(std::move(chunk));
        chunk.clear();
      }
      if (!chunk.empty()) chunk += ' ';
      chunk += sentence;
    }
    if (!chunk.empty()) out.push_back(std::move(chunk));
  }
  return out;
}

/// Immutable passage collection with its IDF table,
/// idf(t) = ln(N / (1 + df(t))) + 1 over the N passages.
class DocumentStore {
 public:
  DocumentStore() = default;

  explicit DocumentStore(std::vector<KnowledgePassage> passages) : passages_(std::move(passages)) {
    std::unordered_map<std::string, std::size_t> df;
    for (const auto& p : passages_) {
      std::set<std::string> seen;
      for (auto& w : text::words(p.text)) seen.insert(std::move(w));
      for (const auto& w : seen) ++df[w];
    }
    const double n = static_cast<double>(passages_.size());
    for (const auto& [w, d] : df) {
      const double v = std::log(n / (1.0 + static_cast<double>(d))) + 1.0;
      idf_.emplace(w, v);
      max_idf_ = std::max(max_idf_, v);
    }
  }

  const std::vector<KnowledgePassage>& passages() const { return passages_; }
  std::size_t size() const { return passages_.size(); }
  bool empty() const { return passages_.empty(); }
  const std::unordered_map<std::string, double>& idf_table() const { return idf_; }

  bool has_idf(std::string_view word) const { return idf_.count(std::string(word)) > 0; }

  /// IDF of `word`; words never seen in the store get the store's maximum IDF
  /// (1 for an empty store).
  double idf(std::string_view word) const {
    auto it = idf_.find(std::string(word));
    return it == idf_.end() ? max_idf() : it->second;
  }

  double max_idf() const { return idf_.empty() ? 1.0 : max_idf_; }

  /// Replaces IDF values; used to pin weights in fixtures.
  DocumentStore with_idf(std::unordered_map<std::string, double> table) const {
    DocumentStore copy = *this;
    copy.idf_ = std::move(table);
    copy.max_idf_ = 0.0;
    for (const auto& [_, v] : copy.idf_) copy.max_idf_ = std::max(copy.max_idf_, v);
    return copy;
  }

 private:
  std::vector<KnowledgePassage> passages_;
  std::unordered_map<std::string, double> idf_;
  double max_idf_ = 0.0;
};

/// A source document for ingestion.
struct SourceText {
  std::string text;
  PassageSource source = PassageSource::user_kb;
};

/// Builds a fresh store from whole documents. Re-ingesting means building a new
/// store and swapping it in; stores are never mutated.
inline DocumentStore ingest(const std::vector<SourceText>& texts) {
  std::vector<KnowledgePassage> passages;
  for (const auto& t : texts) {
    for (auto& p : split_passages(t.text)) {
      passages.push_back({std::move(p), t.source, std::nullopt, 0.0});
    }
  }
  return DocumentStore(std::move(passages));
}

}  // namespace kgen
