#pragma once

#include <stdexcept>
#include <string>

namespace nls {

// Every failure raised by the library derives from Error so callers can
// catch one type; the subclasses map to the distinct failure modes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sample count is not of the form 4N+1.
class InvalidGridError : public Error {
 public:
  using Error::Error;
};

// Field carries modes the requested grid cannot represent without wrap-around.
class AliasingError : public Error {
 public:
  using Error::Error;
};

// Argument outside an operation's domain (e.g. a field not in S_N).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// The O(N^3) direct-sum evaluator refused a problem above its size limit.
class CostGuardError : public Error {
 public:
  using Error::Error;
};

// Convergence fit requested on fewer than two rows.
class DegenerateReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace nls
