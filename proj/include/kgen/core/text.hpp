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
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace kgen::text {

/// ASCII lowercasing; bytes outside ASCII pass through unchanged.
inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

/// Lowercase with whitespace runs collapsed to one space; used as a dedup key.
inline std::string normalize(std::string_view s) { return join(split_whitespace(lower(s))); }

inline bool is_word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '\'' || c == '_' || u >= 0x80;
}

/// A word and the byte range it occupies in the (lowercased) source.
struct WordSpan {
  std::string word;
  std::size_t begin;
  std::size_t end;
};

/// Maximal runs of word characters, lowercased, with their positions.
inline std::vector<WordSpan> word_spans(std::string_view s) {
  std::vector<WordSpan> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !is_word_char(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && is_word_char(s[j])) ++j;
    if (j > i) {
      // strip apostrophes hanging off either end ("holmes'" -> "holmes")
      std::size_t b = i, e = j;
      while (b < e && s[b] == '\'') ++b;
      while (e > b && s[e - 1] == '\'') --e;
      if (e > b) out.push_back({lower(s.substr(b, e - b)), b, e});
    }
    i = j;
  }
  return out;
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  for (auto& w : word_spans(s)) out.push_back(std::move(w.word));
  return out;
}

/// Splits after `.`, `?` or `!` when followed by whitespace. Pieces are trimmed;
/// empty pieces are dropped.
inline std::vector<std::string> split_sentences(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if ((c == '.' || c == '?' || c == '!') && i + 1 < s.size() && is_space(s[i + 1])) {
      auto piece = trim(s.substr(start, i + 1 - start));
      if (!piece.empty()) out.push_back(std::move(piece));
      start = i + 1;
    }
  }
  auto tail = trim(s.substr(start));
  if (!tail.empty()) out.push_back(std::move(tail));
  return out;
}

/// Paragraphs separated by one or more blank lines.
inline std::vector<std::string> split_paragraphs(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  std::size_t i = 0;
  auto flush = [&] {
    auto t = trim(current);
    if (!t.empty()) out.push_back(std::move(t));
    current.clear();
  };
  while (i <= s.size()) {
    std::size_t nl = s.find('\n', i);
    if (nl == std::string_view::npos) nl = s.size();
    auto line = s.substr(i, nl - i);
    if (trim(line).empty()) {
      flush();
    } else {
      if (!current.empty()) current += '\n';
      current += line;
    }
    i = nl + 1;
  }
  flush();
  return out;
}

}  // namespace kgen::text
