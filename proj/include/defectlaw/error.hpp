#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace defectlaw {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

// Malformed source text. `line` is 1-based.
class LexError : public Error {
public:
  LexError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Bad input file content. `row` is the 1-based physical line, 0 when unknown.
class DataError : public Error {
public:
  DataError(const std::string& what, std::size_t row = 0)
      : Error(row ? "row " + std::to_string(row) + ": " + what : what), row_(row) {}
  std::size_t row() const { return row_; }

private:
  std::size_t row_;
};

class InsufficientDataError : public Error {
public:
  using Error::Error;
};

class DegenerateDesignError : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  using Error::Error;
};

} // namespace defectlaw
