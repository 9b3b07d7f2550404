// Copyright 2026 The offlang Authors.
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

#ifndef OFFLANG_ERRORS_H_
#define OFFLANG_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace offlang {

// Base of every error raised by the library. The CLI maps the category to an
// exit status.
class Error : public std::runtime_error {
 public:
  enum class Category { kArgument, kData, kRuntime };

  Error(Category category, const std::string &what)
      : std::runtime_error(what), category_(category) {}

  Category category() const { return category_; }

 private:
  Category category_;
};

// Caller passed a value outside an operation's domain.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string &what)
      : Error(Category::kArgument, what) {}
};

// Inconsistent model/embedding/flag combination.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what)
      : Error(Category::kArgument, what) {}
};

// Malformed input file. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string &source, std::size_t line,
             const std::string &what)
      : Error(Category::kData,
              source + (line > 0 ? ":" + std::to_string(line) : "") + ": " +
                  what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A value violates a domain invariant (label hierarchy, duplicate ids, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &what)
      : Error(Category::kData, what) {}
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string &what)
      : Error(Category::kData, what) {}
};

class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(const std::string &what)
      : Error(Category::kData, what) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string &what)
      : Error(Category::kRuntime, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string &what)
      : Error(Category::kRuntime, what) {}
};

}  // namespace offlang

#endif  // OFFLANG_ERRORS_H_
