#pragma once

#include <stdexcept>
#include <string>

namespace maxtrans {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter outside the open domain of a curve, surface, or ODE solution.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A vector or curve has the wrong causal character for the requested operation.
class CausalityError : public Error {
 public:
  using Error::Error;
};

/// Curve is locally straight (acceleration below frame_eps).
class DegenerateCurveError : public Error {
 public:
  using Error::Error;
};

/// Frenet frame requested on a pseudo-null curve or vice versa.
class WrongFrameError : public Error {
 public:
  using Error::Error;
};

/// Torsion vanishes where a non-planar curve is required.
class PlanarCurveError : public Error {
 public:
  using Error::Error;
};

/// A family or curve parameter violates its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input does not meet an operation's stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Surface point where Xs x Xt vanishes (or is too small to normalize).
class RegularityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace maxtrans
