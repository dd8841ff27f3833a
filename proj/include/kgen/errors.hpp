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

#include <stdexcept>
#include <string>

namespace kgen {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A token id outside the vocabulary.
class InvalidId : public Error {
 public:
  using Error::Error;
};

/// Hard constraints cannot be satisfied within the decoding budget.
class InfeasibleConstraints : public Error {
 public:
  using Error::Error;
};

/// Missing or malformed engine assets, detected before any generation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kgen
