#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fgsg {

enum class ErrorKind {
  // curve_model
  DuplicatePoint,
  ZeroPoint,
  PositiveRealPoint,
  UnpairedComplexPoint,
  InvalidInput,
  // contour_engine
  GeometryConflict,
  BasisSelfCheckFailed,
  StepCollapse,
  ToleranceNotMet,
  // abelian_data
  SingularPeriodMatrix,
  InvariantViolation,
  PathCrossesCut,
  // theta_engine
  LatticeBlowup,
  // sg_solution
  NearDivisor,
  AmbiguousSign,
  UnwrapGap,
  // topological_charge
  NonInteger,
  MismatchWithDefinition,
  // multiscale
  NonMonotoneConvergence,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// True for errors caused by bad input data rather than numerical failure.
bool is_input_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fgsg
