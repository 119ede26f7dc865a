#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvcurl {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Operands built over different charts or with different variable counts.
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

// Argument outside the domain of an operation: bad coordinate index, wrong grade.
class DomainError : public Error {
public:
  using Error::Error;
};

// Zero denominators, poles, vanishing densities or multipliers.
class MathError : public Error {
public:
  using Error::Error;
};

class NotPoisson : public MathError {
public:
  using MathError::MathError;
};

// Malformed user input that parsed but is not well-typed or well-formed.
class ValidationError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace mvcurl
