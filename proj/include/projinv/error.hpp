#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projinv {

/// Every failure the library can signal. Guard failures (singular points of a
/// formula) are ordinary values of this enum; callers that evaluate over a
/// window usually record them instead of aborting.
enum class ErrorKind {
  DivisionByNearZero,
  NegativeBaseFractionalPower,
  DomainError,
  DepthExhausted,
  SyntaxError,
  UnknownIdentifier,
  DimensionMismatch,
  InvalidArgument,
  OnHyperplaneAtInfinity,
  CenterPlaneSingularity,
  VerticalTangent,
  InflectionPoint,
  ConicPoint,
  NonConvexPoint,
  ZeroDensity,
  DegeneratePoint,
  ZeroKappa,
  NegativeKappaBranch,
  ZeroAlpha,
  NegativeAlphaBranch,
  InternalInconsistency,
  NonConvexProjection,
  DegenerateZ3,
  FoldSingularity,
  AllPointsSingular,
  InsufficientRegularSamples,
  IllConditioned,
  GroupMismatch,
};

std::string_view to_string(ErrorKind kind);

/// Short %g rendering of a number for error messages.
std::string format_value(double v);

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

/// Parse failure carrying the 1-based column where it was detected.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t column)
      : Error(ErrorKind::SyntaxError, what + " at offset " + std::to_string(column)),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

}  // namespace projinv
