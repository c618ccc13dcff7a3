#pragma once

#include <stdexcept>
#include <string>

namespace affine {

// Base class for all error conditions raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : Error {
  using Error::Error;
};
struct SingularMatrix : Error {
  using Error::Error;
};
struct NotSymmetric : Error {
  using Error::Error;
};
struct OutsideDomain : Error {
  using Error::Error;
};
struct NotOnBoundary : Error {
  using Error::Error;
};
struct ZeroKineticEnergy : Error {
  using Error::Error;
};
struct ZeroEnergy : Error {
  using Error::Error;
};
struct StepFailure : Error {
  using Error::Error;
};
struct TooFewSamples : Error {
  using Error::Error;
};
struct WindowOutOfRange : Error {
  using Error::Error;
};
struct WindowNotBracketed : Error {
  using Error::Error;
};
struct QuadratureFailure : Error {
  using Error::Error;
};
struct ZeroAsymptote : Error {
  using Error::Error;
};
struct DetNotDiverging : Error {
  using Error::Error;
};
struct PreconditionMu : Error {
  using Error::Error;
};
struct NoContraction : Error {
  using Error::Error;
};
struct InsufficientDecay : Error {
  using Error::Error;
};
struct InsufficientSpan : Error {
  using Error::Error;
};
struct DetA1NotPositive : Error {
  using Error::Error;
};
struct NotNilpotent : Error {
  using Error::Error;
};
struct NotUnimodular : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace affine
