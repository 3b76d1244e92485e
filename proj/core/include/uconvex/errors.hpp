#pragma once

#include <stdexcept>
#include <string>

namespace uconvex {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input shape / format problems (CLI exit 2).
struct LoadError : Error {
  using Error::Error;
};
struct DimensionMismatch : LoadError {
  using LoadError::LoadError;
};
struct NonFiniteInput : LoadError {
  using LoadError::LoadError;
};

// Numeric / geometric failures (CLI exit 3).
struct NumericError : Error {
  using Error::Error;
};
struct NoBoundary : NumericError {
  using NumericError::NumericError;
};
struct OutsidePoint : NumericError {
  using NumericError::NumericError;
};
struct ChordNotRealizable : NumericError {
  using NumericError::NumericError;
};
struct OutOfRange : NumericError {
  using NumericError::NumericError;
};
struct ConfigMissing : NumericError {
  using NumericError::NumericError;
};
struct OriginNotInterior : NumericError {
  using NumericError::NumericError;
};
struct NonEuclideanNorm : NumericError {
  using NumericError::NumericError;
};
struct EmptyIntersectionSuspected : NumericError {
  using NumericError::NumericError;
};
struct EmptyIntersection : NumericError {
  using NumericError::NumericError;
};
struct InfeasiblePoint : NumericError {
  using NumericError::NumericError;
};
struct GaugeUnbounded : NumericError {
  using NumericError::NumericError;
};
struct KernelParallel : NumericError {
  using NumericError::NumericError;
};
struct NotSurjective : NumericError {
  using NumericError::NumericError;
};

// Hypothesis audit failed: the run is inconclusive, not pass/fail (CLI exit 4).
struct HypothesisViolated : Error {
  using Error::Error;
};

}  // namespace uconvex
