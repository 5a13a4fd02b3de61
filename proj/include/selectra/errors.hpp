#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selectra {

enum class ErrorCode {
  DegenerateSimplex,
  OverlappingInteriors,
  UnknownCell,
  PointOutsideComplex,
  InvalidArgument,
  MeshMismatch,
  // relations
  NotOpenForm,
  UnsupportedForm,
  EmptyBody,
  EnumerationOverflow,
  EmptyInterval,
  NonConvexUnion,
  NotDisjoint,
  NotACover,
  // engines
  NotOpenRelation,
  NotLSCRelation,
  NotUSC,
  NotLSC,
  GapViolated,
  NotIncreasing,
  NotASelectionOnA,
  SubdivisionLimitExceeded,
  InfeasibleInteriorPoint,
  IndexMismatch,
  // io
  ParseError,
  ValidationError,
  UnsupportedDim,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported through this type. The message
/// carries the concrete witness (cell id, point, value) where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace selectra
