// Copyright 2026 The satqr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace satqr {

enum class ErrorCategory {
  InvalidArgument,
  Domain,      // geometry outside the sphere model
  Visibility,  // a required ground link is below the horizon
  Quadrature,
  Config,
  Io,
  Simulation,
};

const char* to_string(ErrorCategory c) noexcept;

/// Base exception for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& w) : Error(ErrorCategory::InvalidArgument, w) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& w) : Error(ErrorCategory::Domain, w) {}
};

class VisibilityError : public Error {
 public:
  explicit VisibilityError(const std::string& w) : Error(ErrorCategory::Visibility, w) {}
};

class QuadratureError : public Error {
 public:
  explicit QuadratureError(const std::string& w) : Error(ErrorCategory::Quadrature, w) {}
};

/// Schema violation. `key_path` is the dotted path of the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key_path, const std::string& w)
      : Error(ErrorCategory::Config, key_path.empty() ? w : key_path + ": " + w),
        key_path_(std::move(key_path)) {}

  const std::string& key_path() const noexcept { return key_path_; }

 private:
  std::string key_path_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& w) : Error(ErrorCategory::Io, w) {}
};

class SimulationError : public Error {
 public:
  explicit SimulationError(const std::string& w) : Error(ErrorCategory::Simulation, w) {}
};

}  // namespace satqr
