#pragma once

#include <stdexcept>
#include <string>

namespace rana {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UndefinedRegister : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  using Error::Error;
};

class LetterNotInAlphabet : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class StateSetOverflow : public Error {
 public:
  using Error::Error;
};

// A construction was handed an automaton of the wrong flavor.
class FlavorError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rana
