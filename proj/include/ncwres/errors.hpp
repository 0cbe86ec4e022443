#pragma once

#include <stdexcept>
#include <string>

namespace ncwres {

/// Base of every error raised by the engine. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class InvalidParameter : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

/// A pole outside {+i, -i}; the input is outside the supported symbol class.
class UnsupportedPole : public Error {
public:
  using Error::Error;
};

class IntegrabilityError : public Error {
public:
  using Error::Error;
};

/// Polynomial degree in h'(0) exceeded the cap of 2.
class HDegreeOverflow : public Error {
public:
  using Error::Error;
};

/// An identity that must hold by construction failed; indicates a bug in the model.
class ModelingError : public Error {
public:
  using Error::Error;
};

class ScopeError : public Error {
public:
  using Error::Error;
};

class SphereIntegrationUnsupported : public Error {
public:
  using Error::Error;
};

class InternalConsistencyError : public Error {
public:
  using Error::Error;
};

class SingularSystem : public Error {
public:
  using Error::Error;
};

/// Samples are not reproduced by the reconstructed form.
class OverdeterminedError : public Error {
public:
  using Error::Error;
};

} // namespace ncwres
