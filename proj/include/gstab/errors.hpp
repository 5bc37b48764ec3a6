#pragma once

#include <stdexcept>
#include <string>

namespace gstab {

// Base class for every error raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Extended-real subtraction was requested for an undefined pair
// ((-inf) - (-inf) or finite - (-inf)).
struct UndefinedDifference : Error {
  using Error::Error;
};

// A map or level function produced NaN or +inf.
struct NonFiniteOutput : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// A region yielded no sample points under the given plan.
struct EmptyRegion : Error {
  using Error::Error;
};

// A radial bin required by the envelope fit contains no samples.
struct InsufficientSamples : Error {
  using Error::Error;
};

// No level in the search bracket satisfies the decrease condition.
struct NoFeasibleLambda : Error {
  using Error::Error;
};

// Connectedness rasterization supports at most three dimensions.
struct DimensionTooHigh : Error {
  using Error::Error;
};

// A documented precondition of an operation does not hold.
struct PreconditionViolation : Error {
  using Error::Error;
};

// Malformed configuration file or CLI usage.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace gstab
