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

#include <string>
#include <string_view>

#include "kgen/core/text.hpp"
#include "kgen/core/vocabulary.hpp"

namespace kgen {

/// Lowercased whitespace tokens mapped to ids; out-of-vocabulary tokens become UNK.
/// No BOS/EOS is added.
inline TokenSequence tokenize(std::string_view input, const Vocabulary& vocab) {
  TokenSequence out;
  for (const auto& tok : text::split_whitespace(text::lower(input))) out.push_back(vocab.id(tok));
  return out;
}

/// Tokens joined by single spaces, with BOS/EOS dropped. Throws InvalidId.
inline std::string detokenize(const TokenSequence& seq, const Vocabulary& vocab) {
  std::string out;
  for (TokenId id : seq) {
    const auto& tok = vocab.token(id);
    if (id == Vocabulary::kBos || id == Vocabulary::kEos) continue;
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

}  // namespace kgen
