#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace condsym {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Division by an identically zero denominator and similar algebraic failures.
class MathError : public Error {
 public:
  using Error::Error;
};

/// Failures while solving or ranking jet expressions.
class JetError : public Error {
 public:
  using Error::Error;
};

/// Substitution chains that do not terminate (rank cycles, ill-posed solved forms).
class ReductionError : public Error {
 public:
  using Error::Error;
};

}  // namespace condsym
