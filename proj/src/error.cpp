#include "heunqes/error.hpp"

namespace heunqes {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonPositiveMass: return "NonPositiveMass";
    case Errc::ZeroAngularMomentum: return "ZeroAngularMomentum";
    case Errc::VanishingCoupling: return "VanishingCoupling";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::InvalidHeunParams: return "InvalidHeunParams";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::OverflowGuard: return "OverflowGuard";
    case Errc::NonPositiveFrequency: return "NonPositiveFrequency";
    case Errc::NoPositiveRoot: return "NoPositiveRoot";
    case Errc::NoRootInRange: return "NoRootInRange";
    case Errc::WrongDegree: return "WrongDegree";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::InvalidGrid: return "InvalidGrid";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
  }
  return "Unknown";
}

}  // namespace heunqes
