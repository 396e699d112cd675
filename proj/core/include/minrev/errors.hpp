#pragma once

#include <stdexcept>
#include <string>

namespace minrev {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// DSL syntax error; `position` is a 0-based character offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  int position() const { return position_; }

 private:
  int position_;
};

/// Input violates a structural axiom (reflexivity, transitivity, coloring, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A documented exactness cap was exceeded. Caps are hard errors, never
/// silent truncation.
class CapError : public Error {
 public:
  using Error::Error;
};

/// Operator data cannot be explained by minimization over any partial order.
class ReconstructError : public Error {
 public:
  using Error::Error;
};

}  // namespace minrev
