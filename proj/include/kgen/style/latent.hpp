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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kgen/style/word_vectors.hpp"

namespace kgen {

/// Maps sentences to fixed-dimension vectors and back.
class LatentCodec {
 public:
  virtual ~LatentCodec() = default;
  virtual std::size_t dim() const = 0;
  virtual LatentVector encode(std::string_view sentence) const = 0;
  virtual std::string decode(const LatentVector& z) const = 0;
};

using LatentCodecPtr = std::shared_ptr<const LatentCodec>;

/// u * z_a + (1 - u) * z_b, elementwise.
inline LatentVector interpolate_latent(const LatentVector& z_a, const LatentVector& z_b, double u) {
  if (z_a.size() != z_b.size()) {
    throw InvalidArgument("latent vectors differ in dimension (" + std::to_string(z_a.size()) +
                          " vs " + std::to_string(z_b.size()) + ")");
  }
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("interpolation weight must be in [0,1]");
  LatentVector out(z_a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u * z_a[i] + (1.0 - u) * z_b[i];
  return out;
}

/// Bag-of-vectors codec: a sentence encodes to the mean vector of its known
/// words, and decoding returns the corpus sentence with the most similar
/// encoding (earliest on ties). It makes no smoothness promise.
class BaselineCodec final : public LatentCodec {
 public:
  BaselineCodec(std::vector<std::string> corpus, std::shared_ptr<const WordVectors> wv)
      : corpus_(std::move(corpus)), wv_(std::move(wv)) {
    if (!wv_ || wv_->empty()) throw InvalidArgument("baseline codec needs word vectors");
    if (corpus_.empty()) throw InvalidArgument("baseline codec needs a non-empty corpus");
    encodings_.reserve(corpus_.size());
    for (const auto& s : corpus_) encodings_.push_back(encode(s));
  }

  std::size_t dim() const override { return wv_->dim(); }
  const std::vector<std::string>& corpus() const { return corpus_; }

  LatentVector encode(std::string_view sentence) const override {
    LatentVector z(wv_->dim(), 0.0);
    std::size_t n = 0;
    for (const auto& w : text::words(sentence)) {
      if (const auto* v = wv_->find(w)) {
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += (*v)[i];
        ++n;
      }
    }
    if (n > 0) {
      for (auto& x : z) x /= static_cast<double>(n);
    }
    return z;
  }

  std::string decode(const LatentVector& z) const override {
    if (z.size() != dim()) throw InvalidArgument("latent vector has the wrong dimension");
    std::size_t best = 0;
    double best_sim = cosine(z, encodings_[0]);
    for (std::size_t i = 1; i < encodings_.size(); ++i) {
      const double s = cosine(z, encodings_[i]);
      if (s > best_sim) {
        best_sim = s;
        best = i;
      }
    }
    return corpus_[best];
  }

 private:
  std::vector<std::string> corpus_;
  std::shared_ptr<const WordVectors> wv_;
  std::vector<LatentVector> encodings_;
};

}  // namespace kgen
