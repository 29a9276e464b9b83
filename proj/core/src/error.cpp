#include "dwork/error.hpp"

namespace dwork {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonPrimeP: return "NonPrimeP";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::TableCapExceeded: return "TableCapExceeded";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::IncompatibleFields: return "IncompatibleFields";
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::EmptyList: return "EmptyList";
    case Errc::ToleranceExceeded: return "ToleranceExceeded";
    case Errc::OrderUnavailable: return "OrderUnavailable";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NTooLarge: return "NTooLarge";
    case Errc::PairingBoundViolated: return "PairingBoundViolated";
    case Errc::PDividesN: return "PDividesN";
    case Errc::PsiZero: return "PsiZero";
    case Errc::LambdaZero: return "LambdaZero";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::FormMismatch: return "FormMismatch";
    case Errc::RoundingFailure: return "RoundingFailure";
    case Errc::CongruenceViolated: return "CongruenceViolated";
    case Errc::PairingInvariantViolated: return "PairingInvariantViolated";
    case Errc::SpecialClass: return "SpecialClass";
    case Errc::NonIntegralMultiplicity: return "NonIntegralMultiplicity";
    case Errc::NonIntegral: return "NonIntegral";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::CountInvariantViolated: return "CountInvariantViolated";
  }
  return "Unknown";
}

}  // namespace dwork
