// Copyright 2026 The qapcut Authors
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

#ifndef QAPCUT_ERRORS_HPP_
#define QAPCUT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qapcut {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed arguments that violate a precondition (sizes, ranges).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Operation invoked on an object in the wrong state (e.g. dual objective of
/// a non-optimal solution).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive routine refused because the problem exceeds its size guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input. Subclasses carry the detail.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t token_index)
      : InputError(what), token_index_(token_index) {}

  /// Zero-based index of the offending token in the input stream.
  std::size_t token_index() const noexcept { return token_index_; }

 private:
  std::size_t token_index_;
};

class TruncationError : public InputError {
 public:
  TruncationError(const std::string& what, std::size_t expected,
                  std::size_t found)
      : InputError(what), expected_(expected), found_(found) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t expected_;
  std::size_t found_;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace qapcut

#endif  // QAPCUT_ERRORS_HPP_
