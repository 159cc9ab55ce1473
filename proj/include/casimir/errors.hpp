#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error {
  using Error::Error;
};
struct ZeroVector : Error {
  using Error::Error;
};
struct EvalAtResonance : Error {
  using Error::Error;
};
struct IdealConductorEval : Error {
  using Error::Error;
};
struct SingularInterface : Error {
  using Error::Error;
};
struct ResonantFilm : Error {
  using Error::Error;
};
struct DegenerateEpsZZ : Error {
  using Error::Error;
};
struct CavityResonance : Error {
  using Error::Error;
};
struct IllConditionedZeroMode : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace casimir
