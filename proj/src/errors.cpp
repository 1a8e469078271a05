#include "amoeba/errors.hpp"

namespace amoeba {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AllConstantsZero: return "AllConstantsZero";
    case ErrorCode::ZeroRowCoefficient: return "ZeroRowCoefficient";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OffTorus: return "OffTorus";
    case ErrorCode::UndefinedArgument: return "UndefinedArgument";
    case ErrorCode::NotSquareCase: return "NotSquareCase";
    case ErrorCode::NotOnSpace: return "NotOnSpace";
    case ErrorCode::NotReal: return "NotReal";
    case ErrorCode::NotALine: return "NotALine";
    case ErrorCode::ZeroConstant: return "ZeroConstant";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace amoeba
