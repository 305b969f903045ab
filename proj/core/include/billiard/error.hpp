// Copyright 2026 The billiard-prop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exception types shared by every module. Each leaf type maps to a distinct
 * exit code in the command-line tool.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace billiard {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual const char *kind() const noexcept { return "Error"; }
};

/// A value violates a documented invariant (bad masses, N = 0, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char *kind() const noexcept override {
        return "ValidationError";
    }
};

/// A theta series with a unit-modulus nome did not settle below tolerance.
class NonConvergentError : public Error {
  public:
    NonConvergentError(const std::string &what, double last_term)
        : Error(what), last_term_(last_term) {}
    [[nodiscard]] double last_term() const noexcept { return last_term_; }
    [[nodiscard]] const char *kind() const noexcept override {
        return "NonConvergent";
    }

  private:
    double last_term_;
};

/// Series terms grow (large imaginary argument) or became non-finite.
class OverflowError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char *kind() const noexcept override {
        return "Overflow";
    }
};

class QuadratureError : public Error {
  public:
    QuadratureError(const std::string &what, double estimate)
        : Error(what), estimate_(estimate) {}
    [[nodiscard]] double estimate() const noexcept { return estimate_; }
    [[nodiscard]] const char *kind() const noexcept override {
        return "QuadratureError";
    }

  private:
    double estimate_;
};

class ParseError : public Error {
  public:
    ParseError(const std::string &what, int line, std::string key)
        : Error(what), line_(line), key_(std::move(key)) {}
    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] const std::string &key() const noexcept { return key_; }
    [[nodiscard]] const char *kind() const noexcept override {
        return "ParseError";
    }

  private:
    int line_;
    std::string key_;
};

} // namespace billiard
