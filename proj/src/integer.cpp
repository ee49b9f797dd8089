#include "k3iso/integer.hpp"

#include "k3iso/error.hpp"

namespace k3iso {

ExtendedGcd extended_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

std::optional<Int> mod_inverse(const Int& a, const Int& n) {
  if (n < 1) return std::nullopt;
  if (n == 1) return Int(0);
  ExtendedGcd e = extended_gcd(mod(a, n), n);
  if (e.g != 1) return std::nullopt;
  return mod(e.s, n);
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::SplitFailure: return "SplitFailure";
    case ErrorCode::InvalidLattice: return "InvalidLattice";
    case ErrorCode::NotInLattice: return "NotInLattice";
    case ErrorCode::IntegralityFailure: return "IntegralityFailure";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::NotPrimitivePolarization: return "NotPrimitivePolarization";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ZeroTarget: return "ZeroTarget";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::LatticeMismatch: return "LatticeMismatch";
    case ErrorCode::SynthesisFailure: return "SynthesisFailure";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
  }
  return "Unknown";
}

}  // namespace k3iso
