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

#include <set>
#include <string>
#include <vector>

#include "kgen/generators/generator.hpp"

namespace kgen {

/// A generator with some tokens forbidden: their mass is removed and the rest
/// renormalized. When every permitted token has zero mass the inner
/// distribution is returned unchanged.
class MaskedGenerator final : public Generator {
 public:
  MaskedGenerator(GeneratorPtr inner, std::set<TokenId> banned)
      : inner_(std::move(inner)), banned_(std::move(banned)) {
    if (!inner_) throw InvalidArgument("null generator");
  }

  const std::string& name() const override { return inner_->name(); }
  const Vocabulary& vocab() const override { return inner_->vocab(); }
  const GeneratorPtr& inner() const { return inner_; }

  TokenDistribution next_step(std::span<const TokenId> prefix) const override {
    auto dist = inner_->next_step(prefix);
    std::vector<double> p = dist.probs();
    double kept = 0.0;
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (banned_.count(static_cast<TokenId>(t))) {
        p[t] = 0.0;
      } else {
        kept += p[t];
      }
    }
    if (!(kept > 0.0)) return dist;
    for (double& x : p) x /= kept;
    return TokenDistribution(std::move(p));
  }

 private:
  GeneratorPtr inner_;
  std::set<TokenId> banned_;
};

}  // namespace kgen
