#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fomc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown symbol, duplicate declaration, or arity mismatch.
class VocabularyError : public Error {
 public:
  using Error::Error;
};

/// An evaluation needed a variable the assignment does not cover.
class AssignmentError : public Error {
 public:
  using Error::Error;
};

/// A structure violates its invariants (range, totality, empty universe).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The formula has no Sigma_t level but the engine needs one.
class UnclassifiedError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The input uses a feature the chosen algorithm does not handle.
class UnsupportedFeatureError : public Error {
 public:
  using Error::Error;
};

/// 1-based position in a text input.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, const std::string& message)
      : Error(std::to_string(span.line) + ":" + std::to_string(span.column) +
              ": " + message),
        span_(span),
        message_(message) {}

  [[nodiscard]] SourceSpan span() const { return span_; }
  [[nodiscard]] const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

}  // namespace fomc
