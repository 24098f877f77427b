#pragma once

#include <stdexcept>
#include <string>

namespace genproj {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

/// A NaN or infinite value was offered to a Matrix.
class NonFiniteError : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class NotHermitianError : public Error {
public:
  using Error::Error;
};

class NotNormalError : public Error {
public:
  using Error::Error;
};

/// Jacobi iteration hit its sweep cap without reaching the requested threshold.
class NonConvergenceError : public Error {
public:
  using Error::Error;
};

/// Two spectral clusters are too close to be told apart at the chosen radius.
class ClusterAmbiguityError : public Error {
public:
  using Error::Error;
};

class NotASolutionError : public Error {
public:
  using Error::Error;
};

/// An eigenvalue is not near any admissible point of {0} and the n-th roots of unity.
class AssignmentAmbiguityError : public Error {
public:
  using Error::Error;
};

class InvalidProjectionFamilyError : public Error {
public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace genproj
