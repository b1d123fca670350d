#include "projinv/error.hpp"

#include <cstdio>

namespace projinv {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByNearZero: return "DivisionByNearZero";
    case ErrorKind::NegativeBaseFractionalPower: return "NegativeBaseFractionalPower";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DepthExhausted: return "DepthExhausted";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OnHyperplaneAtInfinity: return "OnHyperplaneAtInfinity";
    case ErrorKind::CenterPlaneSingularity: return "CenterPlaneSingularity";
    case ErrorKind::VerticalTangent: return "VerticalTangent";
    case ErrorKind::InflectionPoint: return "InflectionPoint";
    case ErrorKind::ConicPoint: return "ConicPoint";
    case ErrorKind::NonConvexPoint: return "NonConvexPoint";
    case ErrorKind::ZeroDensity: return "ZeroDensity";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::ZeroKappa: return "ZeroKappa";
    case ErrorKind::NegativeKappaBranch: return "NegativeKappaBranch";
    case ErrorKind::ZeroAlpha: return "ZeroAlpha";
    case ErrorKind::NegativeAlphaBranch: return "NegativeAlphaBranch";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::NonConvexProjection: return "NonConvexProjection";
    case ErrorKind::DegenerateZ3: return "DegenerateZ3";
    case ErrorKind::FoldSingularity: return "FoldSingularity";
    case ErrorKind::AllPointsSingular: return "AllPointsSingular";
    case ErrorKind::InsufficientRegularSamples: return "InsufficientRegularSamples";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
  }
  return "Unknown";
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace projinv
