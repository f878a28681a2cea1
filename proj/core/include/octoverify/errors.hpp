#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace octoverify {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates a mathematical precondition (zero inverse, non-unit base, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Level mismatch and similar structural misuse of algebra elements.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The chart metric is singular or a frame is rank deficient at a point.
class ChartDegeneracyError : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil leaves the domain along a non-periodic axis.
class StencilError : public Error {
 public:
  using Error::Error;
};

/// A check declines to run because a stated hypothesis does not hold
/// (e.g. a codimension outside the theorem's range).
class RefusedError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Iterative numerics failed (Jacobi sweep budget exhausted).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Manifold-spec or run-config problem. `position` is the byte offset into
/// the spec text for syntax errors, npos for arithmetic/validation errors.
class SpecError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit SpecError(const std::string& what, std::size_t position = npos)
      : Error(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace octoverify
