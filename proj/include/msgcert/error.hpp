/* Copyright 2026 The msgcert Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MSGCERT_ERROR_HPP
#define MSGCERT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msgcert {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Inconsistent sizes between inputs (feature rows vs. labels, weight shapes, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured budget (path count, IE terms, subsets).
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// The input does not have the structure an algorithm requires (e.g. not a tree).
class ShapeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Structured file with invalid content (duplicate rows, wrong header, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A vote source cannot provide the samples an estimate needs.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace msgcert

#endif  // MSGCERT_ERROR_HPP
