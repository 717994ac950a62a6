#pragma once

#include <stdexcept>
#include <string>

namespace lagcfg {

enum class ErrorCode {
  DivisionByZero,
  MixedFieldKinds,
  RequiresExtension,
  InvalidTolerance,
  DimensionMismatch,
  GramMismatch,
  RankDeficient,
  UndefinedCrossRatio,
  WrongN,
  ZeroProductEntry,
  NotRealField,
  SamplingFailed,
  EulerFormulaUndefined,
  RangeError,
  NotSkew,
  FormulaUndefined,
  ZeroCrossRatio,
  RelationViolated,
  WrongParity,
  NotGeneric,
  ParityMismatch,
  PositivityFailed,
  DegenerateOperator,
  WindowTooSmall,
  ZeroRescaleEntry,
  InvalidConfiguration,
  NotInE,
  LengthMismatch,
  UnsupportedN,
  InvalidInput,
  InternalCheckFailed,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lagcfg
