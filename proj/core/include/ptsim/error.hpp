#pragma once

#include <stdexcept>
#include <string>

namespace ptsim {

enum class ErrorCode {
  NonFinite,
  NotDiagonalizable,
  NotHermitian,
  NotPsd,
  NotUnitary,
  NotContraction,
  ExceptionalPoint,
  BrokenPhase,
  NotNormalized,
  NonPositiveOmega,
  ZeroBranch,
  SingularMatrix,
  ConvergenceFailure,
  InvalidArgument,
  IoError,
};

const char* error_code_name(ErrorCode code);

/// Single exception type for the whole library; the code distinguishes
/// validation problems (bad inputs, bad configuration) from numerical
/// failures (exceptional points, lost unitarity, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for problems the caller could have prevented by passing valid
  /// inputs; maps to CLI exit code 1 (numerical failures map to 2).
  bool is_validation() const noexcept {
    return code_ == ErrorCode::InvalidArgument ||
           code_ == ErrorCode::NotNormalized ||
           code_ == ErrorCode::NonPositiveOmega ||
           code_ == ErrorCode::IoError;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace ptsim
