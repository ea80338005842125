#pragma once

#include <stdexcept>
#include <string>

namespace qcone {

/// Base of every error raised by the library. Each subclass names the
/// contract that was violated so callers (the CLI in particular) can map
/// failures onto exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid size or shape parameters for a builder.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The operation only supports simple graphs.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed graph6 or cone-spec text.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Input violates a numeric precondition (e.g. non-symmetric matrix).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Spectra of different sizes were compared.
class ComparisonError : public Error {
 public:
  using Error::Error;
};

/// A polynomial has no sign change across a root bracket.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// A cone spec is outside the family a closed form covers.
class FamilyError : public Error {
 public:
  using Error::Error;
};

/// A mate construction does not apply to the given spec.
class InapplicableError : public Error {
 public:
  using Error::Error;
};

/// Requested order exceeds what an exhaustive routine supports.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// An explicit eigenvector failed its residual check. Always a bug.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcone
