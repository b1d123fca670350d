#include "projinv/planeinv.hpp"

#include <cmath>
#include <string>

namespace projinv {
namespace {

void require_y2(const Jet& y2, const PlaneGuards& guards) {
  if (!(std::abs(y2.value()) > guards.min_y2)) {
    throw Error(ErrorKind::InflectionPoint, "Y_2 = " + format_value(y2.value()));
  }
}

// A and B are compared with the sizes of their own terms, so the guards
// detect cancellation rather than small magnitude.
double a_scale(const PlaneGraphJet& g) {
  const double y2 = g.at(2).value(), y3 = g.at(3).value(), y4 = g.at(4).value(),
               y5 = g.at(5).value();
  return 9.0 * std::abs(y5 * y2 * y2) + 45.0 * std::abs(y4 * y3 * y2) +
         40.0 * std::abs(y3 * y3 * y3);
}

double b_scale(const PlaneGraphJet& g) {
  const double y2 = g.at(2).value(), y3 = g.at(3).value(), y4 = g.at(4).value();
  return 3.0 * std::abs(y2 * y4) + 5.0 * y3 * y3;
}

void require_a(const PlaneGraphJet& g, const Jet& a, const PlaneGuards& guards) {
  if (!(std::abs(a.value()) > guards.min_a * a_scale(g))) {
    throw Error(ErrorKind::ConicPoint, "A = " + format_value(a.value()));
  }
}

void require_b(const PlaneGraphJet& g, const Jet& b, const PlaneGuards& guards) {
  if (!(b.value() > guards.min_b * b_scale(g))) {
    throw Error(ErrorKind::NonConvexPoint, "B = " + format_value(b.value()));
  }
}

Jet x_density(const PlaneGraphJet& g) { return g.X.derivative(); }

Jet mu_jet(const PlaneGraphJet& g, const PlaneGuards& guards) {
  const Jet& y2 = g.at(2);
  require_y2(y2, guards);
  return invariant_B(g) * pow_thirds(y2, -8) / 3.0;
}

Jet mu_chi_jet(const PlaneGraphJet& g, const PlaneGuards& guards) {
  const Jet& y2 = g.at(2);
  require_y2(y2, guards);
  return invariant_A(g) * powi(y2, -4) / 9.0;
}

Jet chi_density(const PlaneGraphJet& g, const PlaneGuards& guards) {
  const Jet& y2 = g.at(2);
  require_y2(y2, guards);
  return cbrt(y2) * x_density(g);
}

Jet nu_jet(const PlaneGraphJet& g, const PlaneGuards& guards) {
  const Jet b = invariant_B(g);
  require_b(g, b, guards);
  return 3.0 * invariant_A(g) * pow(b, -1.5);
}

Jet rho_density(const PlaneGraphJet& g, const PlaneGuards& guards) {
  const Jet b = invariant_B(g);
  require_b(g, b, guards);
  return sqrt(b) / (3.0 * g.at(2)) * x_density(g);
}

}  // namespace

Jet invariant_B(const PlaneGraphJet& g) {
  const Jet& y2 = g.at(2);
  const Jet& y3 = g.at(3);
  return 3.0 * y2 * g.at(4) - 5.0 * y3 * y3;
}

Jet invariant_A(const PlaneGraphJet& g) {
  const Jet& y2 = g.at(2);
  const Jet& y3 = g.at(3);
  return 9.0 * g.at(5) * y2 * y2 - 45.0 * g.at(4) * y3 * y2 + 40.0 * y3 * y3 * y3;
}

Jet invariant_derivative(const Jet& f, const Jet& density, int k) {
  if (!(std::abs(density.value()) > kDefaultEpsDiv)) {
    throw Error(ErrorKind::ZeroDensity, "arc-length density vanishes");
  }
  Jet out = f;
  for (int i = 0; i < k; ++i) out = out.derivative() / density;
  return out;
}

EquiAffineInvariants equi_affine(const PlaneGraphJet& g, const PlaneGuards& guards) {
  EquiAffineInvariants r;
  r.B = guarded("B", [&] { return invariant_B(g); });
  r.mu = guarded("mu", [&] { return mu_jet(g, guards); });
  r.mu_chi = guarded("mu_chi", [&] { return mu_chi_jet(g, guards); });
  r.chi = {ArcKind::EquiAffineChi, guarded("dchi", [&] { return chi_density(g, guards); })};
  return r;
}

ProjectiveInvariants projective(const PlaneGraphJet& g, const PlaneGuards& guards) {
  ProjectiveInvariants r;
  r.eta = guarded("eta", [&] {
    require_y2(g.at(2), guards);
    const Jet a = invariant_A(g);
    require_a(g, a, guards);
    const Jet mu = mu_jet(g, guards);
    const Jet dchi = chi_density(g, guards);
    const Jet m1 = mu_chi_jet(g, guards);
    const Jet m2 = invariant_derivative(m1, dchi);
    const Jet m3 = invariant_derivative(m2, dchi);
    return (6.0 * m3 * m1 - 7.0 * m2 * m2 - 3.0 * mu * m1 * m1) * pow_thirds(m1, -8) / 6.0;
  });
  r.xi = {ArcKind::ProjectiveXi, guarded("dxi", [&] {
            const Jet& y2 = g.at(2);
            require_y2(y2, guards);
            const Jet a = invariant_A(g);
            require_a(g, a, guards);
            return cbrt(a) / (std::cbrt(9.0) * y2) * x_density(g);
          })};
  return r;
}

AffineInvariants affine(const PlaneGraphJet& g, const PlaneGuards& guards) {
  AffineInvariants r;
  r.nu = guarded("nu", [&] { return nu_jet(g, guards); });
  r.rho = {ArcKind::AffineRho, guarded("drho", [&] { return rho_density(g, guards); })};
  return r;
}

AffineHigher affine_normalized_higher(const PlaneGraphJet& g, const PlaneGuards& guards) {
  AffineHigher r;
  r.iota_y6 = guarded("iota_Y6", [&] {
    const Jet nu = nu_jet(g, guards);
    const Jet nu1 = invariant_derivative(nu, rho_density(g, guards));
    return nu1 + 0.5 * nu * nu + 45.0;
  });
  r.iota_y7 = guarded("iota_Y7", [&] {
    const Jet nu = nu_jet(g, guards);
    const Jet drho = rho_density(g, guards);
    const Jet nu1 = invariant_derivative(nu, drho);
    const Jet nu2 = invariant_derivative(nu1, drho);
    return nu2 + (5.0 / 3.0) * nu * nu1 + nu * nu * nu / 3.0 + 51.0 * nu;
  });
  return r;
}

}  // namespace projinv
