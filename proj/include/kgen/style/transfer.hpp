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
#include <vector>

#include "kgen/decoding/hypothesis.hpp"
#include "kgen/style/latent.hpp"
#include "kgen/style/synonyms.hpp"

namespace kgen {

/// Sentence words with each replaced by its stylized synonym where one exists.
struct LexicalEdit {
  std::string edited;
  std::size_t replacements = 0;
};

inline LexicalEdit stylize_words(std::string_view sentence, const SynonymResources& res) {
  LexicalEdit out;
  std::vector<std::string> words = text::words(sentence);
  for (auto& w : words) {
    if (auto rep = stylized_replacement(w, res)) {
      w = rep->word;
      ++out.replacements;
    }
  }
  out.edited = text::join(words);
  return out;
}

/// Soft-edit style transfer: substitute stylized synonyms, then decode the point
/// `u` of the way from the edited sentence back toward the input in latent space.
/// Tokens are left empty; the text is the result.
inline Hypothesis soft_edit(std::string_view sentence, const LatentCodec& codec, double u,
                            const SynonymResources& res) {
  const auto edit = stylize_words(sentence, res);
  const auto z_in = codec.encode(sentence);
  Hypothesis h;
  h.provenance = "soft_edit";
  if (edit.replacements == 0) {
    h.text = codec.decode(z_in);
  } else {
    h.text = codec.decode(interpolate_latent(z_in, codec.encode(edit.edited), u));
  }
  return h;
}

/// Pre-encoded stylized sentences for nearest-neighbour lookup.
class SentenceIndex {
 public:
  SentenceIndex(std::vector<std::string> sentences, const LatentCodec& codec)
      : sentences_(std::move(sentences)) {
    if (sentences_.empty()) throw InvalidArgument("stylized corpus must not be empty");
    for (const auto& s : sentences_) encodings_.push_back(codec.encode(s));
  }

  const std::vector<std::string>& sentences() const { return sentences_; }
  const LatentVector& encoding(std::size_t i) const { return encodings_[i]; }

  /// Index of the sentence whose encoding is most cosine-similar to `z`.
  std::size_t nearest(const LatentVector& z) const {
    std::size_t best = 0;
    double best_sim = cosine(z, encodings_[0]);
    for (std::size_t i = 1; i < encodings_.size(); ++i) {
      const double s = cosine(z, encodings_[i]);
      if (s > best_sim) {
        best_sim = s;
        best = i;
      }
    }
    return best;
  }

 private:
  std::vector<std::string> sentences_;
  std::vector<LatentVector> encodings_;
};

/// Soft-retrieval style transfer: find the nearest stylized sentence, then decode
/// the `u`-interpolation between the input and it.
inline Hypothesis soft_retrieval(std::string_view sentence, const SentenceIndex& stylized,
                                 const LatentCodec& codec, double u) {
  const auto z_in = codec.encode(sentence);
  const auto& z_style = stylized.encoding(stylized.nearest(z_in));
  Hypothesis h;
  h.provenance = "soft_retrieval";
  h.text = codec.decode(interpolate_latent(z_in, z_style, u));
  return h;
}

inline Hypothesis soft_retrieval(std::string_view sentence,
                                 const std::vector<std::string>& stylized_corpus,
                                 const LatentCodec& codec, double u) {
  return soft_retrieval(sentence, SentenceIndex(stylized_corpus, codec), codec, u);
}

}  // namespace kgen
