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
#include <limits>
#include <memory>
#include <span>
#include <string>

#include "kgen/core/distribution.hpp"
#include "kgen/core/vocabulary.hpp"

namespace kgen {

/// A conditional generator over the shared vocabulary.
///
/// `next_step` must return a valid distribution for every prefix, including the
/// empty one. The prefix is the conditioning context followed by whatever has been
/// generated so far; BOS padding is the generator's business.
class Generator {
 public:
  virtual ~Generator() = default;

  virtual const std::string& name() const = 0;
  virtual const Vocabulary& vocab() const = 0;
  virtual TokenDistribution next_step(std::span<const TokenId> prefix) const = 0;
};

using GeneratorPtr = std::shared_ptr<const Generator>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Natural log of P(continuation | context) by the chain rule. Returns -inf as soon
/// as a step has zero probability.
inline double log_prob(const Generator& gen, std::span<const TokenId> context,
                       std::span<const TokenId> continuation) {
  TokenSequence prefix(context.begin(), context.end());
  prefix.reserve(context.size() + continuation.size());
  double total = 0.0;
  for (TokenId t : continuation) {
    const auto dist = gen.next_step(prefix);
    if (t < 0 || static_cast<std::size_t>(t) >= dist.size()) {
      throw InvalidId("token id " + std::to_string(t) + " outside generator vocabulary");
    }
    const double p = dist[static_cast<std::size_t>(t)];
    if (p <= 0.0) return kNegInf;
    total += std::log(p);
    prefix.push_back(t);
  }
  return total;
}

}  // namespace kgen
