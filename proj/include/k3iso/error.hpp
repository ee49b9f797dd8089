#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3iso {

enum class ErrorCode {
  InvalidInput,
  NotPrimitive,
  NotDivisible,
  SplitFailure,
  InvalidLattice,
  NotInLattice,
  IntegralityFailure,
  NotEven,
  NotHyperbolic,
  NotPrimitivePolarization,
  NotPositive,
  ZeroTarget,
  PreconditionViolated,
  HypothesisViolated,
  LatticeMismatch,
  SynthesisFailure,
  NotIsotropic,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace k3iso
