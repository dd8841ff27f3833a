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
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgen/knowledge/document_store.hpp"

namespace kgen {

/// Draws k uniformly from {1..max_k} with the seeded generator, then returns the
/// k distinct sentence words with the highest IDF (earliest first on ties).
inline std::vector<std::string> select_keywords(std::string_view sentence,
                                                const DocumentStore& store, std::size_t max_k,
                                                std::uint64_t seed) {
  if (max_k < 1) throw InvalidArgument("keyword count bound must be >= 1");
  std::mt19937_64 rng(seed);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, max_k)(rng);

  std::vector<std::string> unique;
  std::set<std::string> seen;
  for (auto& w : text::words(sentence)) {
    if (seen.insert(w).second) unique.push_back(std::move(w));
  }
  std::stable_sort(unique.begin(), unique.end(), [&](const auto& a, const auto& b) {
    return store.idf(a) > store.idf(b);
  });
  if (unique.size() > k) unique.resize(k);
  return unique;
}

}  // namespace kgen
