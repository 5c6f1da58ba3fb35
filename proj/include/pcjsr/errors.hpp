#pragma once

#include <stdexcept>
#include <string>

namespace pcjsr {

enum class ErrorCode {
  InvalidInput,
  InvalidWord,
  DanglingEdge,
  EmptyLabel,
  LetterOutOfRange,
  DimensionMismatch,
  GammaNonPositive,
  UnsupportedCombination,
  GraphNotPathComplete,
  PreconditionUnverified,
  BudgetExceeded,
  BracketFailure,
  NumericalFailure,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace pcjsr
