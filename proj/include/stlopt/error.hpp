#pragma once

#include <stdexcept>
#include <string>

namespace stlopt {

enum class ErrorCode {
  Syntax,
  InvalidInterval,
  InsufficientHorizon,
  UnknownChannel,
  UnalignedTime,
  EmptyWindow,
  NestedTemporalAvg,
  UntilAvg,
  MissingAgmScale,
  AgmDomain,
  InvalidArgument,
  NonFinite,
  Io,
};

const char* to_string(ErrorCode code);

/// Base for every error raised by the library. The code lets callers (and
/// the CLI exit-status mapping) branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Formula syntax error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, int line, int column)
      : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                        ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace stlopt
