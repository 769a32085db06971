#include "fgsg/errors.hpp"

namespace fgsg {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::ZeroPoint: return "ZeroPoint";
    case ErrorKind::PositiveRealPoint: return "PositiveRealPoint";
    case ErrorKind::UnpairedComplexPoint: return "UnpairedComplexPoint";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::GeometryConflict: return "GeometryConflict";
    case ErrorKind::BasisSelfCheckFailed: return "BasisSelfCheckFailed";
    case ErrorKind::StepCollapse: return "StepCollapse";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::SingularPeriodMatrix: return "SingularPeriodMatrix";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::PathCrossesCut: return "PathCrossesCut";
    case ErrorKind::LatticeBlowup: return "LatticeBlowup";
    case ErrorKind::NearDivisor: return "NearDivisor";
    case ErrorKind::AmbiguousSign: return "AmbiguousSign";
    case ErrorKind::UnwrapGap: return "UnwrapGap";
    case ErrorKind::NonInteger: return "NonInteger";
    case ErrorKind::MismatchWithDefinition: return "MismatchWithDefinition";
    case ErrorKind::NonMonotoneConvergence: return "NonMonotoneConvergence";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DuplicatePoint:
    case ErrorKind::ZeroPoint:
    case ErrorKind::PositiveRealPoint:
    case ErrorKind::UnpairedComplexPoint:
    case ErrorKind::InvalidInput:
      return true;
    default:
      return false;
  }
}

}  // namespace fgsg
