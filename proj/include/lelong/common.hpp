#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace lelong {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// Tolerance for support-function arithmetic.
inline constexpr double kTauNum = 1e-9;
/// Tolerance for LP membership (L1 infeasibility).
inline constexpr double kTauMem = 1e-8;
/// Tolerance on the Gram matrix of an orthonormalized basis.
inline constexpr double kTauGram = 1e-8;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class SolverError : public Error {
public:
  using Error::Error;
};

class ResourceError : public Error {
public:
  using Error::Error;
};

class UnsupportedConfiguration : public Error {
public:
  using Error::Error;
};

class DegenerateBody : public Error {
public:
  using Error::Error;
};

class NoWitness : public Error {
public:
  using Error::Error;
};

// Raised when a construction's hypotheses fail (e.g. the body is a simplex).
class NotApplicable : public Error {
public:
  using Error::Error;
};

class QuadratureError : public Error {
public:
  using Error::Error;
};

} // namespace lelong
