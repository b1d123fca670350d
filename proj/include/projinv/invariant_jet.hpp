#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "projinv/error.hpp"
#include "projinv/taylor.hpp"

namespace projinv {

/// A named invariant as a jet in the curve parameter, or the guard that
/// prevented its evaluation at this point.
struct InvariantJet {
  InvariantJet() = default;
  explicit InvariantJet(std::string n) : name(std::move(n)) {}
  InvariantJet(std::string n, std::optional<Jet> j, std::optional<ErrorKind> f, std::string r)
      : name(std::move(n)), jet(std::move(j)), failure(f), reason(std::move(r)) {}

  std::string name;
  std::optional<Jet> jet;
  std::optional<ErrorKind> failure;
  std::string reason;

  bool valid() const noexcept { return jet.has_value(); }
  /// The jet, or rethrows the recorded guard failure.
  const Jet& get() const {
    if (!jet) {
      throw Error(failure.value_or(ErrorKind::InvalidArgument),
                  name.empty() ? reason : name + ": " + reason);
    }
    return *jet;
  }
  double value() const { return get().value(); }
};

/// Runs `f` and captures a projinv::Error as an invalid entry.
template <typename F>
InvariantJet guarded(std::string name, F&& f) {
  try {
    return {std::move(name), std::forward<F>(f)(), std::nullopt, {}};
  } catch (const Error& e) {
    return {std::move(name), std::nullopt, e.kind(), e.detail()};
  }
}

/// Relative residual |a - b| / (1 + max(|a|, |b|)).
inline double relative_residual(double a, double b) {
  const double scale = 1.0 + (std::abs(a) > std::abs(b) ? std::abs(a) : std::abs(b));
  return std::abs(a - b) / scale;
}

}  // namespace projinv
