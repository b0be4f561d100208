#pragma once

#include <stdexcept>
#include <string>

namespace phaselab {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in Hilbert spaces of different dimension.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An input failed a structural requirement (normalization, hermiticity,
/// density-matrix validity, orthonormality of a basis set, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A relative phase was requested between numerically orthogonal states.
class OrthogonalStates : public Error {
 public:
  using Error::Error;
};

/// A cyclic-evolution quantity was requested for a non-cyclic trajectory.
class NotCyclic : public Error {
 public:
  using Error::Error;
};

/// Consecutive trajectory overlaps dropped below the floor; the time grid is
/// too coarse for discrete phase extraction.
class OverlapCollapse : public Error {
 public:
  using Error::Error;
};

/// Scenario or file input failed schema validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace phaselab
