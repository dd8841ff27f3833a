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

// Scratch directories and configs for pipeline and service tests.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "kgen/pipelines/engine.hpp"

namespace kgen::testing {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("kgen_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline nlohmann::json demo_config_json() {
  std::ifstream in(std::filesystem::path(KGEN_DEMO_DIR) / "config.json");
  return nlohmann::json::parse(in);
}

/// The demo config with `edit` applied; paths resolve against the demo directory.
template <class Edit>
std::unique_ptr<Engine> demo_engine(Edit&& edit) {
  auto j = demo_config_json();
  edit(j);
  return std::make_unique<Engine>(EngineConfig::from_json(j, KGEN_DEMO_DIR));
}

inline std::unique_ptr<Engine> demo_engine() {
  return demo_engine([](nlohmann::json&) {});
}

}  // namespace kgen::testing
