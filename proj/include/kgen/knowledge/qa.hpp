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

#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgen/core/text.hpp"
#include "kgen/errors.hpp"

namespace kgen {

struct QAPair {
  std::string question;
  std::string answer;
};

/// `question<TAB>answer` per line; blank lines are skipped.
inline std::vector<QAPair> parse_qa_tsv(std::istream& in) {
  std::vector<QAPair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw InvalidArgument("QA line " + std::to_string(lineno) + " has no tab separator");
    }
    QAPair p{text::trim(line.substr(0, tab)), text::trim(line.substr(tab + 1))};
    if (p.question.empty() || p.answer.empty()) {
      throw InvalidArgument("QA line " + std::to_string(lineno) + " has an empty field");
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<QAPair> parse_qa_tsv(std::string_view tsv) {
  std::istringstream in{std::string(tsv)};
  return parse_qa_tsv(in);
}

/// TF-IDF index over stored questions; IDF uses ln(N / (1 + df)) + 1 over the N
/// questions, and query words absent from every question count as df = 0.
class QaIndex {
 public:
  QaIndex() = default;

  explicit QaIndex(std::vector<QAPair> pairs) : pairs_(std::move(pairs)) {
    std::unordered_map<std::string, std::size_t> df;
    std::vector<std::map<std::string, double>> tfs;
    for (const auto& p : pairs_) {
      auto tf = term_counts(p.question);
      for (const auto& [w, _] : tf) ++df[w];
      tfs.push_back(std::move(tf));
    }
    n_ = static_cast<double>(pairs_.size());
    for (const auto& [w, d] : df) idf_[w] = std::log(n_ / (1.0 + static_cast<double>(d))) + 1.0;
    for (auto& tf : tfs) vectors_.push_back(weigh(std::move(tf)));
  }

  const std::vector<QAPair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }

  double similarity(std::string_view query, std::size_t i) const {
    return cosine(weigh(term_counts(query)), vectors_.at(i));
  }

  struct Match {
    std::size_t index;
    double similarity;
  };

  /// Best question by cosine similarity; the earliest wins ties.
  std::optional<Match> best(std::string_view query) const {
    if (pairs_.empty()) return std::nullopt;
    const auto q = weigh(term_counts(query));
    Match m{0, -1.0};
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
      const double s = cosine(q, vectors_[i]);
      if (s > m.similarity) m = {i, s};
    }
    return m;
  }

  /// The best answer when its similarity reaches `threshold`.
  std::optional<std::string> retrieve(std::string_view query, double threshold) const {
    const auto m = best(query);
    // cosine of parallel vectors can land an ulp below 1
    if (!m || m->similarity + 1e-12 < threshold) return std::nullopt;
    return pairs_[m->index].answer;
  }

 private:
  using Vec = std::map<std::string, double>;

  static Vec term_counts(std::string_view s) {
    Vec tf;
    for (auto& w : text::words(s)) tf[w] += 1.0;
    return tf;
  }

  Vec weigh(Vec tf) const {
    for (auto& [w, v] : tf) {
      auto it = idf_.find(w);
      v *= it == idf_.end() ? std::log(n_ / 1.0) + 1.0 : it->second;
    }
    return tf;
  }

  static double cosine(const Vec& a, const Vec& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [w, v] : a) {
      na += v * v;
      auto it = b.find(w);
      if (it != b.end()) dot += v * it->second;
    }
    for (const auto& [_, v] : b) nb += v * v;
    if (na <= 0.0 || nb <= 0.0) return 0.0;
    return std::min(1.0, dot / (std::sqrt(na) * std::sqrt(nb)));
  }

  std::vector<QAPair> pairs_;
  std::unordered_map<std::string, double> idf_;
  std::vector<Vec> vectors_;
  double n_ = 0.0;
};

inline std::optional<std::string> qa_retrieve(std::string_view query,
                                              const std::vector<QAPair>& qa, double threshold) {
  return QaIndex(qa).retrieve(query, threshold);
}

}  // namespace kgen
