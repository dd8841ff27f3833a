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

#include <map>
#include <string>
#include <vector>

#include "kgen/generators/generator.hpp"

namespace kgen {

/// Generators addressed by name ("lm", "dialog", "grounded", ...).
class GeneratorRegistry {
 public:
  void add(GeneratorPtr gen) {
    if (!gen) throw InvalidArgument("null generator");
    const auto name = gen->name();
    if (!entries_.emplace(name, std::move(gen)).second) {
      throw ConfigError("generator '" + name + "' registered twice");
    }
  }

  void replace(GeneratorPtr gen) { entries_[gen->name()] = std::move(gen); }

  bool contains(const std::string& name) const { return entries_.count(name) > 0; }

  const GeneratorPtr& get(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw ConfigError("no generator named '" + name + "'");
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : entries_) out.push_back(name);
    return out;
  }

 private:
  std::map<std::string, GeneratorPtr> entries_;
};

}  // namespace kgen
