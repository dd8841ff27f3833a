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

#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgen/knowledge/document_store.hpp"

namespace kgen {

/// A pluggable external search source (web search, news search, site fetcher).
class SearchClient {
 public:
  virtual ~SearchClient() = default;
  virtual const std::string& name() const = 0;
  /// At most `k` passages, each with its source set. May throw; callers degrade.
  virtual std::vector<KnowledgePassage> search(std::string_view query, std::size_t k) const = 0;
};

using SearchClientPtr = std::shared_ptr<const SearchClient>;

/// Offline search client backed by a JSON fixture mapping query substrings to
/// snippet lists:
///
///   { "holmes": [ {"text": "...", "source": "web_snippet", "source_rank": 1} ] }
///
/// Every key contained in the lowercased query contributes its snippets, in file
/// order.
class FixtureSearchClient final : public SearchClient {
 public:
  struct Entry {
    std::string pattern;
    std::vector<KnowledgePassage> passages;
  };

  FixtureSearchClient(std::string name, std::vector<Entry> entries)
      : name_(std::move(name)), entries_(std::move(entries)) {}

  static FixtureSearchClient from_json(std::string name, const nlohmann::ordered_json& j) {
    if (!j.is_object()) throw InvalidArgument("search fixture must be a JSON object");
    std::vector<Entry> entries;
    for (const auto& [pattern, list] : j.items()) {
      Entry e{text::lower(pattern), {}};
      if (!list.is_array()) throw InvalidArgument("fixture entry '" + pattern + "' is not a list");
      for (const auto& item : list) {
        KnowledgePassage p;
        p.text = item.at("text").get<std::string>();
        if (text::trim(p.text).empty()) throw InvalidArgument("fixture snippet text is empty");
        const auto src = parse_passage_source(item.value("source", "web_snippet"));
        if (!src) throw InvalidArgument("unknown passage source in fixture");
        p.source = *src;
        if (item.contains("source_rank") && !item.at("source_rank").is_null()) {
          p.source_rank = item.at("source_rank").get<int>();
        }
        e.passages.push_back(std::move(p));
      }
      entries.push_back(std::move(e));
    }
    return FixtureSearchClient(std::move(name), std::move(entries));
  }

  static FixtureSearchClient load_file(std::string name, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open search fixture " + path);
    return from_json(std::move(name), nlohmann::ordered_json::parse(in));
  }

  const std::string& name() const override { return name_; }

  std::vector<KnowledgePassage> search(std::string_view query, std::size_t k) const override {
    const std::string q = text::lower(query);
    std::vector<KnowledgePassage> out;
    for (const auto& e : entries_) {
      if (q.find(e.pattern) == std::string::npos) continue;
      for (const auto& p : e.passages) {
        if (out.size() >= k) return out;
        out.push_back(p);
      }
    }
    return out;
  }

 private:
  std::string name_;
  std::vector<Entry> entries_;
};

}  // namespace kgen
