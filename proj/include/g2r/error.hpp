#pragma once

#include <stdexcept>
#include <string>

namespace g2r {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (grammar, domain, automaton, DIMACS, OPB, instance files).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Structurally invalid grammar or argument.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A construction would exceed its configured size cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::string predicted)
      : Error(what), predicted_(std::move(predicted)) {}
  const std::string& predicted() const noexcept { return predicted_; }

 private:
  std::string predicted_;
};

}  // namespace g2r
