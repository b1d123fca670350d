#pragma once

#include <functional>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "projinv/error.hpp"
#include "projinv/taylor.hpp"

namespace projinv::testing {

// Passes if f throws projinv::Error of the given kind.
inline ::testing::AssertionResult throws_kind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.kind() == kind) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "threw " << e.what();
  }
  return ::testing::AssertionFailure() << "did not throw " << to_string(kind);
}

inline Jet random_jet(std::mt19937_64& rng, double t0, int order, double lo = -1.0,
                      double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  for (auto& v : d) v = u(rng);
  return Jet(t0, std::move(d));
}

inline double rel(double a, double b) {
  return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace projinv::testing
