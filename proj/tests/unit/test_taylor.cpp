#include <cmath>

#include "support.hpp"

using namespace projinv;
using projinv::testing::random_jet;
using projinv::testing::throws_kind;

namespace {

Jet t_at(double t0, int order = 8) { return Jet::variable(t0, order); }

}  // namespace

TEST(Jet, CubeRootOfTwoTCubed) {
  // (2 t^3)^(1/3) = 2^(1/3) t
  const Jet t = t_at(1.0);
  const Jet j = pow(2.0 * t * t * t, 1.0 / 3.0);
  const double c = std::cbrt(2.0);
  EXPECT_NEAR(j[0], c, 1e-15);
  EXPECT_NEAR(j[1], c, 1e-14);
  for (int k = 2; k <= j.order(); ++k) EXPECT_NEAR(j[k], 0.0, 1e-10) << "k=" << k;
}

TEST(Jet, SinOfTSquaredByHand) {
  const Jet j = sin(t_at(1.0, 2) * t_at(1.0, 2));
  EXPECT_NEAR(j[0], std::sin(1.0), 1e-15);
  EXPECT_NEAR(j[1], 2.0 * std::cos(1.0), 1e-15);
  EXPECT_NEAR(j[2], 2.0 * std::cos(1.0) - 4.0 * std::sin(1.0), 1e-14);
}

TEST(Jet, ExpDerivativesAreExp) {
  const Jet j = exp(t_at(0.7));
  for (int k = 0; k <= j.order(); ++k) EXPECT_NEAR(j[k], std::exp(0.7), 1e-13);
}

TEST(Jet, RealCubeRootOfNegativeBase) {
  // cbrt(-8 t^3) = -2 t
  const Jet t = t_at(1.5);
  const Jet j = cbrt(-8.0 * t * t * t);
  EXPECT_NEAR(j[0], -3.0, 1e-14);
  EXPECT_NEAR(j[1], -2.0, 1e-13);
  EXPECT_NEAR(j[2], 0.0, 1e-12);
  const Jet p = pow_thirds(-8.0 * t * t * t, 2);  // 4 t^2
  EXPECT_NEAR(p[0], 9.0, 1e-13);
  EXPECT_NEAR(p[1], 12.0, 1e-12);
  EXPECT_NEAR(p[2], 8.0, 1e-11);
}

TEST(Jet, NegativeIntegerPower) {
  const Jet t = t_at(2.0);
  const Jet a = powi(t, -3);
  EXPECT_NEAR(a[0], 0.125, 1e-15);
  EXPECT_NEAR(a[1], -3.0 / 16.0, 1e-15);
  EXPECT_NEAR(a[2], 12.0 / 32.0, 1e-14);
  EXPECT_NEAR(a[3], -60.0 / 64.0, 1e-13);
}

TEST(Jet, Guards) {
  const Jet t = t_at(0.0);
  EXPECT_TRUE(throws_kind(ErrorKind::DivisionByNearZero, [&] { (void)(1.0 / t); }));
  EXPECT_TRUE(throws_kind(ErrorKind::DivisionByNearZero, [&] { (void)powi(t, -2); }));
  EXPECT_TRUE(throws_kind(ErrorKind::NegativeBaseFractionalPower,
                          [&] { (void)pow(t - 1.0, 0.5); }));
  EXPECT_TRUE(throws_kind(ErrorKind::DomainError, [&] { (void)sqrt(t - 1.0); }));
  EXPECT_TRUE(throws_kind(ErrorKind::DomainError, [&] { (void)log(t); }));
  EXPECT_TRUE(throws_kind(ErrorKind::DepthExhausted, [] { (void)Jet(0.0, {1.0}).derivative(); }));
  EXPECT_TRUE(throws_kind(ErrorKind::DomainError, [] { (void)Jet(0.0, {NAN, 1.0}); }));
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [] { (void)(Jet::variable(0.0, 3) + Jet::variable(1.0, 3)); }));
}

TEST(Jet, DerivativeShiftsCoefficients) {
  const Jet j = sin(t_at(0.3, 6));
  const Jet d = j.derivative();
  EXPECT_EQ(d.order(), 5);
  for (int k = 0; k <= 5; ++k) EXPECT_DOUBLE_EQ(d[k], j[k + 1]);
}

TEST(JetProperty, QuotientUndoesProduct) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Jet a = random_jet(rng, 0.4, 9);
    // value well away from zero relative to the derivatives, else 1/b is ill-conditioned
    Jet b = random_jet(rng, 0.4, 9) + 3.0;
    const Jet q = (a * b) / b;
    for (int k = 0; k <= 9; ++k) EXPECT_NEAR(q[k], a[k], 1e-9 * (1.0 + std::abs(a[k]))) << trial;
  }
}

TEST(JetProperty, ExpOfLogIsIdentity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Jet a = random_jet(rng, -1.0, 8, 0.5, 2.0);
    const Jet r = exp(log(a));
    for (int k = 0; k <= 8; ++k) EXPECT_NEAR(r[k], a[k], 1e-8 * (1.0 + std::abs(a[k])));
  }
}

TEST(JetProperty, CubeOfCubeRoot) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Jet a = random_jet(rng, 0.0, 8) + (trial % 2 ? 3.0 : -3.0);
    const Jet c = cbrt(a);
    const Jet r = c * c * c;
    for (int k = 0; k <= 8; ++k) EXPECT_NEAR(r[k], a[k], 1e-8 * (1.0 + std::abs(a[k])));
  }
}

TEST(JetProperty, PythagoreanIdentity) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    Jet a = random_jet(rng, 0.0, 8, -3.0, 3.0);
    const Jet s = sin(a), c = cos(a);
    const Jet one = s * s + c * c;
    EXPECT_NEAR(one[0], 1.0, 1e-14);
    for (int k = 1; k <= 8; ++k) EXPECT_NEAR(one[k], 0.0, 1e-8);
  }
}

TEST(JetProperty, Det3AlternatesUnderRowSwap) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Jet> m;
    for (int i = 0; i < 9; ++i) m.push_back(random_jet(rng, 0.0, 5));
    const Jet d = det3(m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8]);
    const Jet s = det3(m[3], m[4], m[5], m[0], m[1], m[2], m[6], m[7], m[8]);
    for (int k = 0; k <= 5; ++k) EXPECT_NEAR(d[k], -s[k], 1e-12);
  }
}
