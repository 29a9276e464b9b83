#pragma once

#include <stdexcept>
#include <string>

namespace dwork {

/// Failure kinds raised by the library. The CLI reports these by name.
enum class Errc {
  NonPrimeP,
  ReducibleModulus,
  TableCapExceeded,
  DivisionByZero,
  IncompatibleFields,
  ZeroArgument,
  EmptyList,
  ToleranceExceeded,
  OrderUnavailable,
  NotPrime,
  NTooLarge,
  PairingBoundViolated,
  PDividesN,
  PsiZero,
  LambdaZero,
  OrderMismatch,
  FormMismatch,
  RoundingFailure,
  CongruenceViolated,
  PairingInvariantViolated,
  SpecialClass,
  NonIntegralMultiplicity,
  NonIntegral,
  InvalidArgument,
  CountInvariantViolated,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dwork
