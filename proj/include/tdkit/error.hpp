#ifndef TDKIT_ERROR_HPP
#define TDKIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tdkit {

enum class ErrorKind {
  Parse,
  NotPrime,
  FieldMismatch,
  DivisionByZero,
  ShapeMismatch,
  DuplicateEigenvalue,
  ProductNotZero,
  ZeroIdempotent,
  DoesNotSplit,
  DiameterMismatch,
  IndexOutOfRange,
  NotSharp,
  NotScalarMultiple,
  NotInvariant,
  InternalInvariantViolation,
  DistinctnessViolated,
  Zeta0NotOne,
  Zeta2Zero,
  AdmissibilityViolated,
  NotDegenerate,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace tdkit

#endif  // TDKIT_ERROR_HPP
