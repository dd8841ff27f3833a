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
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgen/core/text.hpp"
#include "kgen/errors.hpp"

namespace kgen {

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// Logistic regression over unigram presence (multi-hot) features.
class StyleClassifier {
 public:
  StyleClassifier() = default;
  StyleClassifier(std::unordered_map<std::string, double> weights, double bias)
      : weights_(std::move(weights)), bias_(bias) {}

  const std::unordered_map<std::string, double>& weights() const { return weights_; }
  double bias() const { return bias_; }

  double weight(std::string_view word) const {
    auto it = weights_.find(std::string(word));
    return it == weights_.end() ? 0.0 : it->second;
  }

  /// Probability that `input` is stylized; repeated or reordered words do not
  /// change it.
  double intensity(std::string_view input) const {
    double z = bias_;
    for (const auto& w : features(input)) z += weight(w);
    return sigmoid(z);
  }

  static std::set<std::string> features(std::string_view input) {
    std::set<std::string> out;
    for (auto& w : text::words(input)) out.insert(std::move(w));
    return out;
  }

 private:
  std::unordered_map<std::string, double> weights_;
  double bias_ = 0.0;
};

inline double style_intensity(const StyleClassifier& clf, std::string_view input) {
  return clf.intensity(input);
}

struct StyleTrainingOptions {
  int epochs = 200;
  double learning_rate = 0.1;
  double l2 = 1e-4;
};

/// Full-batch gradient descent from all-zero parameters, label 1 = stylized.
/// The bias is not regularized.
inline StyleClassifier train_style_classifier(const std::vector<std::string>& stylized,
                                              const std::vector<std::string>& neutral,
                                              const StyleTrainingOptions& opt = {}) {
  if (stylized.empty() || neutral.empty()) {
    throw InvalidArgument("style classifier needs non-empty stylized and neutral corpora");
  }
  std::map<std::string, std::size_t> feature_index;
  struct Example {
    std::vector<std::size_t> active;
    double label;
  };
  std::vector<Example> data;
  auto add = [&](const std::string& s, double label) {
    Example ex{{}, label};
    for (const auto& w : StyleClassifier::features(s)) {
      auto [it, _] = feature_index.emplace(w, feature_index.size());
      ex.active.push_back(it->second);
    }
    data.push_back(std::move(ex));
  };
  for (const auto& s : stylized) add(s, 1.0);
  for (const auto& s : neutral) add(s, 0.0);

  std::vector<double> w(feature_index.size(), 0.0);
  double b = 0.0;
  const double n = static_cast<double>(data.size());
  std::vector<double> grad(w.size());
  for (int epoch = 0; epoch < opt.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (const auto& ex : data) {
      double z = b;
      for (auto f : ex.active) z += w[f];
      const double err = sigmoid(z) - ex.label;
      for (auto f : ex.active) grad[f] += err;
      grad_b += err;
    }
    for (std::size_t f = 0; f < w.size(); ++f) {
      w[f] -= opt.learning_rate * (grad[f] / n + opt.l2 * w[f]);
    }
    b -= opt.learning_rate * grad_b / n;
  }
  std::unordered_map<std::string, double> weights;
  for (const auto& [word, f] : feature_index) weights.emplace(word, w[f]);
  return StyleClassifier(std::move(weights), b);
}

}  // namespace kgen
