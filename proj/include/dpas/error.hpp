#pragma once

#include <stdexcept>
#include <string>

namespace dpas {

// Base class for all toolkit errors. Subcommands map these to exit codes.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SyntaxError : Error {
  int line, column;
  SyntaxError(const std::string& msg, int line_, int col_)
      : Error("syntax error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_),
        column(col_) {}
};

struct SortError : Error {
  using Error::Error;
};

struct UnboundVariable : Error {
  using Error::Error;
};

struct NotPresburger : Error {
  using Error::Error;
};

struct BoxTooLarge : Error {
  using Error::Error;
};

struct UnsupportedAtom : Error {
  using Error::Error;
};

struct DegenerateTerm : Error {
  using Error::Error;
};

struct NotAFunction : Error {
  using Error::Error;
};

struct InsufficientPrecision : Error {
  using Error::Error;
};

struct NotMeasurableFragment : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct ModelRequired : Error {
  using Error::Error;
};

struct UnboundParameter : Error {
  using Error::Error;
};

struct NotFiberConstant : Error {
  using Error::Error;
};

struct NonLinearExponent : Error {
  using Error::Error;
};

struct NotClearable : Error {
  using Error::Error;
};

struct InsufficientDepth : Error {
  using Error::Error;
};

struct EvalError : Error {
  using Error::Error;
};

}  // namespace dpas
