#pragma once

#include <stdexcept>
#include <string>

namespace tlbraid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad index, odd strand count, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A brute-force computation would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A generating pair turned out to generate a finite group.
class FiniteImageError : public Error {
 public:
  using Error::Error;
};

/// The mixing transformation does not connect the two subspaces.
class NotABridgeError : public Error {
 public:
  using Error::Error;
};

/// A transferred net entry drifted too far from its source entry.
class TransferError : public Error {
 public:
  using Error::Error;
};

/// Solovay-Kitaev refused to run on a net with a poor coverage certificate.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace tlbraid
