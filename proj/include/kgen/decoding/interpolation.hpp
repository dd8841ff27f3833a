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
#include <span>
#include <string>
#include <vector>

#include "kgen/core/distribution.hpp"
#include "kgen/generators/generator.hpp"

namespace kgen {

/// Entrywise sum_m weights[m] * dists[m]. Weights must be non-negative and sum to one.
inline TokenDistribution interpolate_distributions(std::span<const TokenDistribution> dists,
                                                   std::span<const double> weights) {
  if (dists.empty() || dists.size() != weights.size()) {
    throw InvalidArgument("interpolation needs one weight per distribution");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("interpolation weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > TokenDistribution::kSumTolerance) {
    throw InvalidArgument("interpolation weights must sum to 1");
  }
  const std::size_t v = dists.front().size();
  for (const auto& d : dists) {
    if (d.size() != v) throw InvalidArgument("distributions span different vocabularies");
  }
  std::vector<double> out(v, 0.0);
  for (std::size_t m = 0; m < dists.size(); ++m) {
    const auto& p = dists[m].probs();
    const double w = weights[m];
    for (std::size_t i = 0; i < v; ++i) out[i] += w * p[i];
  }
  return TokenDistribution(std::move(out));
}

/// "interp(a,b,...)"
inline std::string interpolation_label(std::span<const GeneratorPtr> gens) {
  std::string label = "interp(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) label += ',';
    label += gens[i]->name();
  }
  return label + ")";
}

}  // namespace kgen
