#pragma once

// Truncated Taylor arithmetic. A Jet stores the derivatives f(t0), f'(t0),
// ..., f^(N)(t0) of a scalar function at a base point t0. Recurrences run on
// normalized coefficients f^(k)/k! internally and convert back on exit.

#include <span>
#include <vector>

namespace projinv {

inline constexpr int kDefaultJetOrder = 10;
inline constexpr double kDefaultEpsDiv = 1e-12;
inline constexpr double kDefaultEpsPow = 1e-12;

class Jet {
 public:
  Jet() = default;

  /// `derivs[k]` is the k-th derivative at `base_point`; must be non-empty
  /// and finite.
  Jet(double base_point, std::vector<double> derivs);

  static Jet constant(double base_point, double value, int order);
  /// The identity function t at t0: [t0, 1, 0, ...].
  static Jet variable(double base_point, int order);

  double base_point() const noexcept { return base_; }
  int order() const noexcept { return static_cast<int>(d_.size()) - 1; }
  double value() const noexcept { return d_.front(); }
  double operator[](int k) const { return d_.at(static_cast<std::size_t>(k)); }
  std::span<const double> derivatives() const noexcept { return d_; }

  /// d/dt of the jet; the result has one order less. Throws DepthExhausted on
  /// an order-0 jet.
  Jet derivative() const;
  Jet truncated(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

 private:
  double base_ = 0.0;
  std::vector<double> d_{0.0};
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double b);
Jet operator+(double a, Jet b);
Jet operator-(Jet a, double b);
Jet operator-(double a, const Jet& b);
Jet operator*(Jet a, double b);
Jet operator*(double a, Jet b);
Jet operator/(Jet a, double b);
Jet operator/(double a, const Jet& b);

/// Division with an explicit singularity threshold on |b(t0)|.
Jet divide(const Jet& a, const Jet& b, double eps_div = kDefaultEpsDiv);

/// a(t)^r for real r. Non-integer r requires a(t0) > eps_pow
/// (NegativeBaseFractionalPower otherwise); integer r is forwarded to powi.
Jet pow(const Jet& a, double r, double eps_pow = kDefaultEpsPow);
/// Integer power by repeated multiplication. Negative n inverts a first, so the
/// division guard applies to a(t0) itself.
Jet powi(const Jet& a, int n);
/// Real power p/3 using the real (odd) cube root, so negative bases are
/// allowed: x^(p/3) = (cbrt x)^p.
Jet pow_thirds(const Jet& a, int p, double eps_pow = kDefaultEpsPow);
Jet cbrt(const Jet& a, double eps_pow = kDefaultEpsPow);

Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet atan(const Jet& a);

/// Determinant of the 3x3 matrix with rows (a0,a1,a2), (b0,b1,b2), (c0,c1,c2).
Jet det3(const Jet& a0, const Jet& a1, const Jet& a2,
         const Jet& b0, const Jet& b1, const Jet& b2,
         const Jet& c0, const Jet& c1, const Jet& c2);

}  // namespace projinv
