#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace amoeba {

enum class ErrorCode {
  InvalidSpec,
  InvalidArgument,
  AllConstantsZero,
  ZeroRowCoefficient,
  DimensionMismatch,
  OffTorus,
  UndefinedArgument,
  NotSquareCase,
  NotOnSpace,
  NotReal,
  NotALine,
  ZeroConstant,
  NotGeneric,
  DimensionTooLarge,
  UnknownColumn,
  UsageError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class AmoebaError : public std::runtime_error {
 public:
  AmoebaError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace amoeba
