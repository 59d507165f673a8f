#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrb {

/// Bad user input: malformed documents, unknown labels, shape mismatches.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedPresentation : public InputError {
 public:
  using InputError::InputError;
};

class UnknownLabel : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : InputError(message + " at line " + std::to_string(line) + ", column " +
                   std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A construction's hypothesis does not hold (e.g. a lift target outside the
/// module constants, an unverified instance, a non-injective probe).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A subspace handed to a quotient is not closed under the action or the
/// operators. `generator` names the offending action or operator.
class ClosureViolation : public PreconditionError {
 public:
  ClosureViolation(const std::string& generator, std::size_t vector_index)
      : PreconditionError("subspace not closed under " + generator + " (basis vector " +
                          std::to_string(vector_index) + ")"),
        generator_(generator) {}

  const std::string& generator() const { return generator_; }

 private:
  std::string generator_;
};

}  // namespace mrb
