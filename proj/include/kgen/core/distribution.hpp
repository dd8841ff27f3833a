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
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "kgen/errors.hpp"

namespace kgen {

/// Next-token probabilities over a shared vocabulary.
class TokenDistribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  TokenDistribution() = default;
  explicit TokenDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  double sum() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

  /// Every entry in [0,1] and the total within 1e-9 of one.
  bool valid() const {
    for (double p : probs_) {
      if (!(p >= 0.0 && p <= 1.0)) return false;
    }
    return !probs_.empty() && std::abs(sum() - 1.0) <= kSumTolerance;
  }

  void check() const {
    if (!valid()) {
      throw InvalidArgument("token distribution is not normalized (sum " +
                            std::to_string(sum()) + ")");
    }
  }

  bool operator==(const TokenDistribution&) const = default;

 private:
  std::vector<double> probs_;
};

}  // namespace kgen
