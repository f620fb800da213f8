// Copyright 2026 The VSR Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vsr {

/// Half-open byte range [start, end) into a source buffer.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  constexpr bool contains(const Span& other) const {
    return start <= other.start && other.end <= end;
  }
  friend constexpr bool operator==(const Span&, const Span&) = default;
};

enum class Severity { Note, Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  Span span;
};

inline std::string to_string(Severity s) {
  switch (s) {
    case Severity::Note: return "note";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "error";
}

inline std::string format_diagnostic(const Diagnostic& d) {
  return to_string(d.severity) + " at " + std::to_string(d.span.start) + ".." +
         std::to_string(d.span.end) + ": " + d.message;
}

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Errors tied to a location in some source text.
class SourceError : public Error {
 public:
  SourceError(const std::string& what, Span span) : Error(what), span_(span) {}
  Span span() const { return span_; }
  Diagnostic diagnostic() const { return {Severity::Error, what(), span_}; }

 private:
  Span span_;
};

class LexError : public SourceError {
 public:
  using SourceError::SourceError;
};

class ParseError : public SourceError {
 public:
  using SourceError::SourceError;
};

/// Malformed serialized tree or corpus file. `line()` is 1-based, 0 if n/a.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Violated numeric precondition (pass@k arguments, empty inputs, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds a configured resource bound (tree depth).
class ResourceError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public Error {
 public:
  using Error::Error;
};

/// A reference source failed to parse. Trusted inputs only; never a reward tier.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

class MutationError : public Error {
 public:
  using Error::Error;
};

}  // namespace vsr
