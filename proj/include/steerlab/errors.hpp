// Copyright 2026 The Steerlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace steerlab {

/// Base error carrying a stable machine-readable category token.
/// The CLI prints errors as "steerlab: error: <category>: <message>" and
/// exits nonzero, so downstream scripts can switch on the category.
class Error : public std::runtime_error {
  public:
    Error(std::string category, const std::string& message)
        : std::runtime_error(message), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

  private:
    std::string category_;
};

/// Input data violates a documented invariant (trace, hermiticity, psd, ...).
/// The message names the failed check.
class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string& message)
        : Error("validation", message) {}
};

/// A file could not be parsed.
class ParseError : public Error {
  public:
    explicit ParseError(const std::string& message) : Error("parse", message) {}
};

/// A numeric procedure failed its internal consistency contract
/// (degenerate null space, probability outside [0,1], ...).
class NumericError : public Error {
  public:
    explicit NumericError(const std::string& message)
        : Error("numeric", message) {}
};

} // namespace steerlab
