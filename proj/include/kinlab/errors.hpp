#pragma once

#include <stdexcept>
#include <string>

namespace kinlab {

struct KinlabError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid cannot resolve the requested scale or hold the required support.
struct GridTooCoarse : KinlabError {
  using KinlabError::KinlabError;
};

/// Stability index outside (0, 1].
struct InvalidStability : KinlabError {
  using KinlabError::KinlabError;
};

/// Spectral content or tail mass escapes the grid window.
struct AliasingDetected : KinlabError {
  using KinlabError::KinlabError;
};

/// Covariance target is not positive definite.
struct SingularTarget : KinlabError {
  using KinlabError::KinlabError;
};

struct QuadratureNotConverged : KinlabError {
  using KinlabError::KinlabError;
};

/// Parameters violate the precondition of the concentration result being probed.
struct RegimeViolated : KinlabError {
  using KinlabError::KinlabError;
};

/// (model, s, p) combination outside the exponent table.
struct OutOfTableRange : KinlabError {
  using KinlabError::KinlabError;
};

struct DegenerateFit : KinlabError {
  using KinlabError::KinlabError;
};

struct ConfigInvalid : KinlabError {
  using KinlabError::KinlabError;
};

}  // namespace kinlab
