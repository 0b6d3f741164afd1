/*
 * Copyright 2026 The selfsim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace selfsim {

/// A restriction closure or enumeration exceeded its caps.
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// An exact equality question could not be decided within caps.
class UndecidedError : public std::runtime_error {
 public:
  explicit UndecidedError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input document (machine JSON, action JSON).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Syntax error in the term/element grammar; position is a byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Requested a Gibbs state outside the admissible range 0 < r < 1/|X|.
class NoKmsStateError : public std::domain_error {
 public:
  explicit NoKmsStateError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace selfsim
