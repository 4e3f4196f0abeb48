#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlattice {

enum class Errc {
  NotAPrimePower,
  UnsupportedOrder,
  OutOfRange,
  TooLarge,
  AmbientMismatch,
  ParseError,
  CycleError,
  UnsupportedShape,
  PreconditionViolated,
  WrongLattice,
  OutOfGuard,
  NotAMember,
  FreenessViolated,
  HallFailure,
  FreenessViolatedAfterStep,
  NotFree,
  PinUnavailable,
  BudgetExceeded,
};

constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::NotAPrimePower: return "NotAPrimePower";
    case Errc::UnsupportedOrder: return "UnsupportedOrder";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::TooLarge: return "TooLarge";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::CycleError: return "CycleError";
    case Errc::UnsupportedShape: return "UnsupportedShape";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::WrongLattice: return "WrongLattice";
    case Errc::OutOfGuard: return "OutOfGuard";
    case Errc::NotAMember: return "NotAMember";
    case Errc::FreenessViolated: return "FreenessViolated";
    case Errc::HallFailure: return "HallFailure";
    case Errc::FreenessViolatedAfterStep: return "FreenessViolatedAfterStep";
    case Errc::NotFree: return "NotFree";
    case Errc::PinUnavailable: return "PinUnavailable";
    case Errc::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this type; `code()`
/// identifies the condition.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qlattice
