#include "projinv/taylor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "projinv/error.hpp"

namespace projinv {
namespace {

constexpr int kMaxFactorial = 170;

const std::array<double, kMaxFactorial + 1>& factorials() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> f{};
    f[0] = 1.0;
    for (int k = 1; k <= kMaxFactorial; ++k) f[k] = f[k - 1] * k;
    return f;
  }();
  return table;
}

using Coeffs = std::vector<double>;

Coeffs to_coeffs(const Jet& a, int order) {
  const auto& f = factorials();
  Coeffs c(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) c[k] = a[k] / f[k];
  return c;
}

Jet from_coeffs(double base, const Coeffs& c) {
  const auto& f = factorials();
  std::vector<double> d(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) d[k] = c[k] * f[k];
  return Jet(base, std::move(d));
}

void require_same_base(const Jet& a, const Jet& b) {
  if (a.base_point() != b.base_point() &&
      std::abs(a.base_point() - b.base_point()) >
          1e-14 * (1.0 + std::abs(a.base_point()))) {
    throw Error(ErrorKind::InvalidArgument, "jets have different base points");
  }
}

int common_order(const Jet& a, const Jet& b) {
  require_same_base(a, b);
  return std::min(a.order(), b.order());
}

// Composition helper: given the normalized coefficients of f' (as function of
// t) build f from its value at t0.
Jet integrate(double base, double value, const Coeffs& derivative_coeffs) {
  Coeffs c(derivative_coeffs.size() + 1);
  c[0] = value;
  for (std::size_t k = 1; k < c.size(); ++k) c[k] = derivative_coeffs[k - 1] / static_cast<double>(k);
  return from_coeffs(base, c);
}

}  // namespace

Jet::Jet(double base_point, std::vector<double> derivs) : base_(base_point), d_(std::move(derivs)) {
  if (d_.empty()) throw Error(ErrorKind::InvalidArgument, "jet needs at least one coefficient");
  if (static_cast<int>(d_.size()) > kMaxFactorial) {
    throw Error(ErrorKind::InvalidArgument, "jet order too large");
  }
  for (double v : d_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::DomainError, "non-finite jet coefficient");
  }
}

Jet Jet::constant(double base_point, double value, int order) {
  std::vector<double> d(static_cast<std::size_t>(std::max(order, 0)) + 1, 0.0);
  d[0] = value;
  return Jet(base_point, std::move(d));
}

Jet Jet::variable(double base_point, int order) {
  std::vector<double> d(static_cast<std::size_t>(std::max(order, 0)) + 1, 0.0);
  d[0] = base_point;
  if (order >= 1) d[1] = 1.0;
  return Jet(base_point, std::move(d));
}

Jet Jet::derivative() const {
  if (order() < 1) throw Error(ErrorKind::DepthExhausted, "cannot differentiate an order-0 jet");
  return Jet(base_, std::vector<double>(d_.begin() + 1, d_.end()));
}

Jet Jet::truncated(int order) const {
  if (order < 0 || order > this->order()) {
    throw Error(ErrorKind::DepthExhausted, "truncation to order " + std::to_string(order));
  }
  return Jet(base_, std::vector<double>(d_.begin(), d_.begin() + order + 1));
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& v : r.d_) v = -v;
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  d_.resize(static_cast<std::size_t>(common_order(*this, rhs)) + 1);
  for (std::size_t k = 0; k < d_.size(); ++k) d_[k] += rhs.d_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  d_.resize(static_cast<std::size_t>(common_order(*this, rhs)) + 1);
  for (std::size_t k = 0; k < d_.size(); ++k) d_[k] -= rhs.d_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }
Jet& Jet::operator/=(const Jet& rhs) { return *this = *this / rhs; }

Jet& Jet::operator+=(double rhs) {
  d_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  d_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (double& v : d_) v *= rhs;
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  if (rhs == 0.0) throw Error(ErrorKind::DivisionByNearZero, "division of a jet by zero");
  for (double& v : d_) v /= rhs;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator+(Jet a, double b) { return a += b; }
Jet operator+(double a, Jet b) { return b += a; }
Jet operator-(Jet a, double b) { return a -= b; }
Jet operator-(double a, const Jet& b) { return -b + a; }
Jet operator*(Jet a, double b) { return a *= b; }
Jet operator*(double a, Jet b) { return b *= a; }
Jet operator/(Jet a, double b) { return a /= b; }
Jet operator/(double a, const Jet& b) {
  return divide(Jet::constant(b.base_point(), a, b.order()), b);
}

Jet operator*(const Jet& a, const Jet& b) {
  const int n = common_order(a, b);
  const Coeffs ca = to_coeffs(a, n), cb = to_coeffs(b, n);
  Coeffs c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i <= k; ++i) c[k] += ca[i] * cb[k - i];
  }
  return from_coeffs(a.base_point(), c);
}

Jet operator/(const Jet& a, const Jet& b) { return divide(a, b); }

Jet divide(const Jet& a, const Jet& b, double eps_div) {
  const int n = common_order(a, b);
  if (!(std::abs(b.value()) >= eps_div)) {
    throw Error(ErrorKind::DivisionByNearZero,
                "denominator value " + format_value(b.value()) + " below threshold");
  }
  const Coeffs ca = to_coeffs(a, n), cb = to_coeffs(b, n);
  Coeffs q(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = ca[k];
    for (int i = 1; i <= k; ++i) s -= cb[i] * q[k - i];
    q[k] = s / cb[0];
  }
  return from_coeffs(a.base_point(), q);
}

Jet powi(const Jet& a, int n) {
  if (n < 0) return powi(1.0 / a, -n);
  Jet result = Jet::constant(a.base_point(), 1.0, a.order());
  Jet base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Jet pow(const Jet& a, double r, double eps_pow) {
  if (r == std::round(r) && std::abs(r) <= 64.0) return powi(a, static_cast<int>(r));
  if (!(a.value() > eps_pow)) {
    throw Error(ErrorKind::NegativeBaseFractionalPower,
                "base " + format_value(a.value()) + " raised to " + format_value(r));
  }
  const int n = a.order();
  const Coeffs ca = to_coeffs(a, n);
  Coeffs p(static_cast<std::size_t>(n) + 1, 0.0);
  p[0] = std::pow(ca[0], r);
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += ((r + 1.0) * j - k) * ca[j] * p[k - j];
    p[k] = s / (k * ca[0]);
  }
  return from_coeffs(a.base_point(), p);
}

Jet pow_thirds(const Jet& a, int p, double eps_pow) {
  if (p % 3 == 0) return powi(a, p / 3);
  if (std::abs(a.value()) <= eps_pow) {
    throw Error(ErrorKind::DivisionByNearZero, "fractional power of a vanishing jet");
  }
  const double r = p / 3.0;
  if (a.value() > 0.0) return pow(a, r, eps_pow);
  Jet m = pow(-a, r, eps_pow);
  return (p % 2 != 0) ? -m : m;
}

Jet cbrt(const Jet& a, double eps_pow) { return pow_thirds(a, 1, eps_pow); }

Jet sqrt(const Jet& a) {
  if (!(a.value() > 0.0)) throw Error(ErrorKind::DomainError, "sqrt of non-positive value");
  return pow(a, 0.5, 0.0);
}

Jet exp(const Jet& a) {
  const int n = a.order();
  const Coeffs ca = to_coeffs(a, n);
  Coeffs e(static_cast<std::size_t>(n) + 1, 0.0);
  e[0] = std::exp(ca[0]);
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * ca[j] * e[k - j];
    e[k] = s / k;
  }
  return from_coeffs(a.base_point(), e);
}

Jet log(const Jet& a) {
  if (!(a.value() > 0.0)) throw Error(ErrorKind::DomainError, "log of non-positive value");
  const int n = a.order();
  const Coeffs ca = to_coeffs(a, n);
  Coeffs l(static_cast<std::size_t>(n) + 1, 0.0);
  l[0] = std::log(ca[0]);
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j < k; ++j) s += j * l[j] * ca[k - j];
    l[k] = (ca[k] - s / k) / ca[0];
  }
  return from_coeffs(a.base_point(), l);
}

namespace {

void sin_cos(const Jet& a, Coeffs& s, Coeffs& c) {
  const int n = a.order();
  const Coeffs ca = to_coeffs(a, n);
  s.assign(static_cast<std::size_t>(n) + 1, 0.0);
  c.assign(static_cast<std::size_t>(n) + 1, 0.0);
  s[0] = std::sin(ca[0]);
  c[0] = std::cos(ca[0]);
  for (int k = 1; k <= n; ++k) {
    double ss = 0.0, cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * ca[j] * c[k - j];
      cc += j * ca[j] * s[k - j];
    }
    s[k] = ss / k;
    c[k] = -cc / k;
  }
}

}  // namespace

Jet sin(const Jet& a) {
  Coeffs s, c;
  sin_cos(a, s, c);
  return from_coeffs(a.base_point(), s);
}

Jet cos(const Jet& a) {
  Coeffs s, c;
  sin_cos(a, s, c);
  return from_coeffs(a.base_point(), c);
}

Jet tan(const Jet& a) {
  Coeffs s, c;
  sin_cos(a, s, c);
  if (std::abs(c[0]) < kDefaultEpsDiv) throw Error(ErrorKind::DomainError, "tan at a pole");
  return from_coeffs(a.base_point(), s) / from_coeffs(a.base_point(), c);
}

Jet atan(const Jet& a) {
  const double value = std::atan(a.value());
  if (a.order() == 0) return Jet(a.base_point(), {value});
  // atan(a)' = a' / (1 + a^2)
  const Jet slope = a.derivative() / (1.0 + a * a).truncated(a.order() - 1);
  return integrate(a.base_point(), value, to_coeffs(slope, slope.order()));
}

Jet det3(const Jet& a0, const Jet& a1, const Jet& a2,
         const Jet& b0, const Jet& b1, const Jet& b2,
         const Jet& c0, const Jet& c1, const Jet& c2) {
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}

}  // namespace projinv
