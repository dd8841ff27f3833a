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
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgen/core/text.hpp"
#include "kgen/errors.hpp"

namespace kgen {

using LatentVector = std::vector<double>;

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Cosine similarity; 0 when either vector is zero.
inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw InvalidArgument("cosine of vectors with different dims");
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

/// Word embedding table. GloVe text layout: `word v1 ... vd` per line.
class WordVectors {
 public:
  WordVectors() = default;
  explicit WordVectors(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return table_.size(); }
  bool empty() const { return table_.empty(); }

  void add(const std::string& word, std::vector<double> v) {
    if (dim_ == 0) dim_ = v.size();
    if (v.size() != dim_ || dim_ == 0) {
      throw InvalidArgument("vector for '" + word + "' has dim " + std::to_string(v.size()) +
                            ", expected " + std::to_string(dim_));
    }
    for (double x : v) {
      if (!std::isfinite(x)) throw InvalidArgument("vector for '" + word + "' is not finite");
    }
    if (!table_.count(word)) order_.push_back(word);
    table_[word] = std::move(v);
  }

  const std::vector<double>* find(std::string_view word) const {
    auto it = table_.find(std::string(word));
    return it == table_.end() ? nullptr : &it->second;
  }

  /// Words in insertion order.
  const std::vector<std::string>& words() const { return order_; }

  static WordVectors load(std::istream& in) {
    WordVectors wv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto fields = text::split_whitespace(line);
      if (fields.empty()) continue;
      if (fields.size() < 2) {
        throw InvalidArgument("word vector line " + std::to_string(lineno) + " has no values");
      }
      std::vector<double> v;
      for (std::size_t i = 1; i < fields.size(); ++i) {
        try {
          v.push_back(std::stod(fields[i]));
        } catch (const std::exception&) {
          throw InvalidArgument("word vector line " + std::to_string(lineno) + " is not numeric");
        }
      }
      wv.add(text::lower(fields[0]), std::move(v));
    }
    return wv;
  }

  static WordVectors load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open word vectors " + path);
    return load(in);
  }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> table_;
  std::vector<std::string> order_;
};

/// Human-edited synonym dictionary. TSV layout: `word<TAB>syn1,syn2,...`.
/// A word is never its own synonym.
class StyleLexicon {
 public:
  void add(const std::string& word, const std::string& synonym) {
    const auto w = text::lower(text::trim(word));
    const auto s = text::lower(text::trim(synonym));
    if (w.empty() || s.empty() || w == s) return;
    synonyms_[w].insert(s);
  }

  bool is_synonym(std::string_view word, std::string_view candidate) const {
    auto it = synonyms_.find(std::string(word));
    return it != synonyms_.end() && it->second.count(std::string(candidate)) > 0;
  }

  const std::set<std::string>& synonyms(std::string_view word) const {
    static const std::set<std::string> none;
    auto it = synonyms_.find(std::string(word));
    return it == synonyms_.end() ? none : it->second;
  }

  std::size_t size() const { return synonyms_.size(); }

  static StyleLexicon load(std::istream& in) {
    StyleLexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty()) continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw InvalidArgument("lexicon line " + std::to_string(lineno) + " has no tab separator");
      }
      const std::string word = line.substr(0, tab);
      std::stringstream rest(line.substr(tab + 1));
      std::string syn;
      while (std::getline(rest, syn, ',')) lex.add(word, syn);
    }
    return lex;
  }

  static StyleLexicon load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open style lexicon " + path);
    return load(in);
  }

 private:
  std::unordered_map<std::string, std::set<std::string>> synonyms_;
};

}  // namespace kgen
