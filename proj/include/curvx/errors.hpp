#pragma once

#include <stdexcept>
#include <string>

namespace curvx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DSL input. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class UnknownSymbolError : public Error {
 public:
  explicit UnknownSymbolError(std::string symbol)
      : Error("unknown symbol '" + symbol + "'"), symbol_(std::move(symbol)) {}
  [[nodiscard]] const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

class UnboundSymbolError : public Error {
 public:
  explicit UnboundSymbolError(std::string symbol)
      : Error("symbol '" + symbol + "' has no value in the binding"), symbol_(std::move(symbol)) {}
  [[nodiscard]] const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

/// Evaluation left the domain of a function (pole, negative even root, log of non-positive).
class DomainError : public Error {
 public:
  DomainError(std::string subexpression, long double value, const std::string& what)
      : Error(what + " in '" + subexpression + "' (argument " + std::to_string(static_cast<double>(value)) + ")"),
        subexpression_(std::move(subexpression)),
        value_(value) {}

  [[nodiscard]] const std::string& subexpression() const noexcept { return subexpression_; }
  [[nodiscard]] long double value() const noexcept { return value_; }

 private:
  std::string subexpression_;
  long double value_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class SingularMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvx
