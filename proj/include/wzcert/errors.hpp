#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "wzcert/rational.hpp"

namespace wzcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Raised when an exact evaluation hits a genuine pole. Carries the point.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, std::map<std::string, Rational> point)
      : Error(what), point_(std::move(point)) {}

  const std::map<std::string, Rational>& point() const { return point_; }

 private:
  std::map<std::string, Rational> point_;
};

class NotHypergeometric : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message), line_(line), column_(column) {}

  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A search (recurrence, certificate) came back empty.
class NotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace wzcert
