#pragma once

#include <stdexcept>
#include <string>

namespace qlan {

/// Precondition violated by the caller (bad diagram, box outside a shape, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a configured size budget (orbit size, tensor dimension).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Gram matrix of a truncated block basis is numerically singular.
class NearSingularGram : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncation of the block basis or Fock space loses more mass than allowed.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two eigenvalues of the reference state coincide.
class DegenerateSpectrum : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Local parameters push the state outside the set of faithful states.
class ParameterOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Too much probability mass on diagrams that were not constructed.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Fock space is too small to host an isometric embedding.
class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qlan
