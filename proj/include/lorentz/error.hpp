#pragma once

#include <stdexcept>
#include <string>

namespace lorentz {

enum class Err {
  CoordinateOffModel,
  NoUniqueGeodesic,
  LegNotTimelike,
  SizeBoundViolated,
  ReverseTriangleViolated,
  UnrealizableTriple,
  GridTooCoarse,
  SturmNotApplicable,
  NotCausal,
  NotABijection,
  TooLarge,
  InvalidChain,
  NotChronological,
  HypothesesNotMet,
  OffSide,
  ParameterOutOfRange,
  ConfigInfeasible,
  SubtriangleDegenerate,
  SideMismatch,
  NoRealizingCurve,
  BadInput,
};

const char* err_name(Err e);

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& what)
      : std::runtime_error(std::string(err_name(c)) + ": " + what), code(c) {}
};

}  // namespace lorentz
