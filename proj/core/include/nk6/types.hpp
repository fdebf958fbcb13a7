#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace nk6 {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (tables, polynomial files, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A multiplication table that violates antisymmetry or the cross-product axiom.
class TableError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (off-sphere point, non-tangent
/// vector, chart point outside the chart, unknown tag).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The chart Jacobian is rank-deficient at the requested point.
class ChartDegeneracyError : public DomainError {
 public:
  ChartDegeneracyError(const std::string& what, double distance)
      : DomainError(what), distance_(distance) {}
  /// Chart distance from the query point to the degeneracy locus.
  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

/// A computed quantity failed an identity it must satisfy; carries the residual.
class IdentityViolation : public Error {
 public:
  IdentityViolation(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Canonical-form reconstruction of a second fundamental form failed.
class ReconstructionError : public IdentityViolation {
 public:
  using IdentityViolation::IdentityViolation;
};

/// Successive quadrature rules disagree beyond tolerance.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, double delta)
      : Error(what), delta_(delta) {}
  double delta() const noexcept { return delta_; }

 private:
  double delta_;
};

}  // namespace nk6
