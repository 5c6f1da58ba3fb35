#include "pcjsr/errors.hpp"

namespace pcjsr {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::LetterOutOfRange: return "LetterOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GammaNonPositive: return "GammaNonPositive";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::GraphNotPathComplete: return "GraphNotPathComplete";
    case ErrorCode::PreconditionUnverified: return "PreconditionUnverified";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

}  // namespace pcjsr
