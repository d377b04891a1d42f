#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oblique {

/// A documented precondition was violated (bad parameter range, zero scale, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A coordinate that must be finite was NaN or infinite. Carries the
/// offending coordinate's name so callers can report it.
class NonFiniteCoordinate : public InvalidArgument {
 public:
  NonFiniteCoordinate(std::string coordinate, double value)
      : InvalidArgument("non-finite coordinate '" + coordinate +
                        "' = " + std::to_string(value)),
        coordinate_(std::move(coordinate)) {}

  const std::string& coordinate() const noexcept { return coordinate_; }

 private:
  std::string coordinate_;
};

/// Matrix inversion was refused because the determinant is below the
/// singularity tolerance. Carries the determinant that was computed.
class SingularMatrix : public std::runtime_error {
 public:
  explicit SingularMatrix(double determinant)
      : std::runtime_error("matrix is singular within tolerance, det = " +
                           std::to_string(determinant)),
        determinant_(determinant) {}

  double determinant() const noexcept { return determinant_; }

 private:
  double determinant_;
};

/// Expression text could not be parsed. Carries the byte offset of the
/// failure and a description of what would have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string expected)
      : std::runtime_error("parse error at offset " + std::to_string(offset) +
                           ": expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

/// Evaluation hit a parameter with no binding in the environment.
class UnboundParameter : public std::runtime_error {
 public:
  explicit UnboundParameter(std::string name)
      : std::runtime_error("unbound parameter '" + name + "'"),
        name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Rendering could not produce a plot (for example, no sample evaluated
/// to a finite value).
class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stream or file write failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oblique
