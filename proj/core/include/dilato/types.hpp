#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <stdexcept>
#include <string>

namespace dilato {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Named residuals of one verification pass; keys are stable identifiers
/// reused by reports and the acceptance suite.
using ResidualMap = std::map<std::string, double>;

/// Orthonormal basis of a subspace of C^ambient_dim, one column per basis vector.
/// Columns follow the deterministic sign convention: the first coordinate of
/// significant modulus is rotated to the positive real axis.
struct SubspaceBasis {
  Index ambient_dim = 0;
  CMat basis;  // ambient_dim x rank, basis^H * basis = I

  Index rank() const { return basis.cols(); }
  /// Orthogonal projector onto the subspace.
  CMat projector() const {
    if (rank() == 0) return CMat::Zero(ambient_dim, ambient_dim);
    return basis * basis.adjoint();
  }
};

enum class ErrorKind {
  ShapeMismatch,
  NotHermitian,
  NegativeEigenvalue,
  DimensionMismatch,
  NotIsometric,
  NotCommuting,
  NotContraction,
  NoConvergence,
  IdentityViolation,
  NonUnitaryX,
  TailNotConverged,
  SingularResolvent,
  NotPure,
  GramMismatch,
  NonUnitaryInput,
  IoError,
  InvalidConfig,
};

const char* to_string(ErrorKind kind);

/// All domain errors carry a kind so callers (in particular the CLI) can map
/// them onto stable exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  /// True for errors caused by bad user input (files, flags) rather than a
  /// failed mathematical assertion.
  bool is_input_error() const {
    return kind_ == ErrorKind::ShapeMismatch || kind_ == ErrorKind::NotCommuting ||
           kind_ == ErrorKind::NotContraction || kind_ == ErrorKind::IoError ||
           kind_ == ErrorKind::InvalidConfig || kind_ == ErrorKind::TailNotConverged;
  }

 private:
  ErrorKind kind_;
};

}  // namespace dilato
