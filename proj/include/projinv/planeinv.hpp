#pragma once

// Differential invariants of plane curves in graph jet coordinates
// Y_i = d^i Y / dX^i. All quantities are jets in the curve parameter t, so
// invariant derivatives are taken as jet quotients (df/dt) / (d arc / dt).
//
// Fractional powers with denominator 3 use the real cube root, which keeps
// the equi-affine and projective quantities defined on both sides of Y_2 = 0.

#include "projinv/invariant_jet.hpp"
#include "projinv/projection.hpp"

namespace projinv {

/// Y_2 is guarded in absolute terms. A and B are guarded relative to the sum
/// of the magnitudes of their terms.
struct PlaneGuards {
  double min_y2 = 1e-8;  // inflection
  double min_a = 1e-9;   // conic
  double min_b = 1e-9;   // convexity
};

enum class ArcKind { EquiAffineChi, ProjectiveXi, AffineRho };

/// d(arc)/dt as a jet.
struct ArcDensity {
  ArcKind kind = ArcKind::EquiAffineChi;
  InvariantJet density;
};

/// B = 3 Y2 Y4 - 5 Y3^2.
Jet invariant_B(const PlaneGraphJet& g);
/// A = 9 Y5 Y2^2 - 45 Y4 Y3 Y2 + 40 Y3^3.
Jet invariant_A(const PlaneGraphJet& g);

struct EquiAffineInvariants {
  InvariantJet B;
  InvariantJet mu;      // B / (3 Y2^(8/3))
  InvariantJet mu_chi;  // A / (9 Y2^4)
  ArcDensity chi;       // Y2^(1/3) dX
};

EquiAffineInvariants equi_affine(const PlaneGraphJet& g, const PlaneGuards& guards = {});

struct ProjectiveInvariants {
  InvariantJet eta;
  ArcDensity xi;  // A^(1/3) / (3^(2/3) Y2) dX
};

/// Projective curvature from mu and its chi-derivatives (quotient route).
ProjectiveInvariants projective(const PlaneGraphJet& g, const PlaneGuards& guards = {});

struct AffineInvariants {
  InvariantJet nu;  // 3 A / B^(3/2)
  ArcDensity rho;   // (1/3) B^(1/2) / Y2 dX
};

AffineInvariants affine(const PlaneGraphJet& g, const PlaneGuards& guards = {});

struct AffineHigher {
  InvariantJet iota_y6;  // nu_rho + nu^2/2 + 45
  InvariantJet iota_y7;  // nu_rho_rho + (5/3) nu nu_rho + nu^3/3 + 51 nu
};

AffineHigher affine_normalized_higher(const PlaneGraphJet& g, const PlaneGuards& guards = {});

/// k-fold invariant derivative D f = (df/dt) / density. Each application
/// consumes one order of jet depth. Throws DepthExhausted or ZeroDensity.
Jet invariant_derivative(const Jet& f, const Jet& density, int k = 1);

}  // namespace projinv
