#pragma once

// Differential invariants of space curves under the linear groups SL(3) and
// GL(3), the gauge invariants tied to central projection from the origin, and
// the invariants of the fiber-preserving affine group tied to parallel
// projection. Everything is a jet in the curve parameter t.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "projinv/curve.hpp"
#include "projinv/invariant_jet.hpp"
#include "projinv/projection.hpp"

namespace projinv {

struct SpaceGuards {
  double min_delta = 1e-10;   // relative to |w| |w_t| |w_tt|
  double min_kappa = 1e-10;
  double min_alpha = 1e-8;    // relative to |kappa_s| + 2 |tau|
  double min_b = 1e-12;       // convexity of the parallel image
  double min_z3 = 1e-10;      // relative guard on y2 z3 - y3 z2
  double consistency = 1e-9;  // agreement required between dual formulas
};

struct CentroEquiAffine {
  InvariantJet Delta;  // [w, w_t, w_tt]
  InvariantJet ds;     // Delta^(1/3)
  InvariantJet kappa;
  InvariantJet tau;
  /// Relative gap between the two kappa routes at the base point.
  double kappa_route_gap = 0.0;
};

/// Throws DegeneratePoint when Delta vanishes and InternalInconsistency when
/// the D_t^2 route and the arc-length route disagree.
CentroEquiAffine centro_equi_affine(const SpaceCurveJet& w, const SpaceGuards& guards = {});

/// Values at the base point of the pieces of w_sss = tau w - kappa w_s.
struct FrenetTerms {
  Eigen::Vector3d w, w_s, w_sss;
  double kappa = 0.0, tau = 0.0;
};

FrenetTerms frenet_terms(const SpaceCurveJet& w, const SpaceGuards& guards = {});

/// |w_sss - tau w + kappa w_s| at the base point.
double frenet_residual(const SpaceCurveJet& w, const SpaceGuards& guards = {});

struct CentroInvariants {
  InvariantJet Delta{"Delta"}, kappa{"kappa"}, tau{"tau"}, kappa_s{"kappa_s"}, alpha{"alpha"};
  InvariantJet kappa_hat{"kappa_hat"}, tau_hat{"tau_hat"}, alpha_hat{"alpha_hat"},
      beta_hat{"beta_hat"};
  InvariantJet zeta_tilde{"zeta_tilde"}, zeta_hat1{"zeta_hat1"}, eta_hat{"eta_hat"};
  InvariantJet ds{"ds"}, dsigma{"dsigma"}, dxi{"dxi"};
  int kappa_sign = 1;
  double beta_route_gap = 0.0;
};

/// For kappa < 0 the powers of kappa use |kappa| and the sign is kept in
/// kappa_sign. Alpha-dependent entries are invalid with ZeroAlpha on curves
/// whose central image is a conic.
CentroInvariants centro_affine(const SpaceCurveJet& w, const SpaceGuards& guards = {});

enum class EtaRoute { Sigma, S, Zeta, Normalized };
std::string to_string(EtaRoute r);
EtaRoute eta_route_from_string(std::string_view s);
inline constexpr std::array<EtaRoute, 4> kAllEtaRoutes{EtaRoute::Sigma, EtaRoute::S,
                                                      EtaRoute::Zeta, EtaRoute::Normalized};

/// Projective curvature of the central image expressed through source
/// invariants. Zeta needs alpha > 0, Normalized needs kappa > 0.
Jet eta_hat(const SpaceCurveJet& w, EtaRoute route, const SpaceGuards& guards = {});

struct NormalizedInvariants {
  Jet I5, I6, I7, J3, J4, J5;
  /// Values fixed by the cross-section: I0..I4 and J0..J2.
  static constexpr std::array<double, 5> phantom_I{0.0, 0.0, 1.0, 0.0, 3.0};
  static constexpr std::array<double, 3> phantom_J{1.0, 0.0, 0.0};
  /// Largest relative gap between the recurrence forms and the closed forms.
  double recurrence_gap = 0.0;
};

NormalizedInvariants normalized_invariants(const SpaceCurveJet& w, const SpaceGuards& guards = {});

struct ZetaRelation {
  double three_z3_alpha = 0.0;
  double mu_chi = 0.0;
  double mu_chi_residual = 0.0;       // |3 z^3 alpha - mu_chi| / (1 + |mu_chi|)
  double zeta_hat1_residual = 0.0;    // closed form vs D_s zeta_tilde
  double density_residual = 0.0;      // (3 alpha)^(1/3) ds vs (3 alpha_hat)^(1/3) dsigma
  double zeta_tilde_residual = 0.0;   // (3 alpha)^(-1/3) vs z mu_chi^(-1/3)
};

/// `image` is the graph jet of the projection of `w` from the origin.
ZetaRelation zeta_relation(const SpaceCurveJet& w, const PlaneGraphJet& image,
                           const SpaceGuards& guards = {});

/// kappa = -(2 eta zeta^2 + 6 zeta zeta_xixi - 9 zeta_xi^2) / (3 zeta^4), with
/// xi-derivatives taken against `dxi_density`.
Jet recover_kappa(const Jet& eta_hat, const Jet& zeta, const Jet& dxi_density);

enum class Verdict { TotallyDegenerate, ConicImage, Regular };
std::string to_string(Verdict v);

struct ClassifySample {
  double t = 0.0;
  double Delta = 0.0;
  double alpha = 0.0;
  bool delta_zero = false;
  bool alpha_zero = false;
  bool pullback_checked = false;
  double y2_residual = 0.0;
  double a_residual = 0.0;
};

struct Classification {
  Verdict verdict = Verdict::Regular;
  std::vector<ClassifySample> samples;
  double max_pullback_residual = 0.0;
};

/// Y_2 and A of the image under projection from the origin, computed on the
/// image and from the source curve (Delta, alpha and the graph coordinates
/// x, z, z_1 = dz/dx). Throws when the image is singular or vertical.
struct LineConicPullback {
  double y2_image = 0.0, y2_source = 0.0;
  double a_image = 0.0, a_source = 0.0;
};

LineConicPullback line_conic_pullback(const SpaceCurveJet& w, const SpaceGuards& guards = {});

/// Samples n points of [t0, t1]. The image-side pullbacks of Y_2 and A are
/// compared with their space-side expressions wherever the projection from
/// the origin has a regular non-vertical image.
Classification classify(const CurveSpec& curve, double t0, double t1, int n,
                        int order = kDefaultJetOrder, const SpaceGuards& guards = {});

/// Invariants attached to central projection from `center`, computed on the
/// translated curve w - center.
CentroInvariants central_offset_invariants(const SpaceCurveJet& w, const Eigen::Vector3d& center,
                                           const SpaceGuards& guards = {});

struct ParallelInvariants {
  InvariantJet nu_hat;
  InvariantJet rho_hat_density;
  /// Closed forms in jet coordinates: iota(z), iota(z_1), ..., iota(z_4).
  std::array<InvariantJet, 5> iota_z;
  /// The same quantities rebuilt from nu and D_rho derivatives of z.
  std::array<InvariantJet, 5> iota_z_recurrence;
  InvariantJet iota_hat_z4;
  /// (iota(z_4) - 3 iota(z_2)) / iota(z_3), equal to iota_hat_z4.
  InvariantJet iota_hat_z4_alt;
  double recurrence_gap = 0.0;
};

ParallelInvariants parallel_invariants(const SpaceGraphJet& g, const SpaceGuards& guards = {});

/// nu_hat of the curve sheared by the inverse of (x, y, z) -> (x + b1 z, y + b2 z, z).
/// Throws FoldSingularity where 1 - b1 z_1 vanishes.
Jet parallel_family_pullback(const SpaceCurveJet& w, double b1, double b2,
                             const SpaceGuards& guards = {});

/// y_2 of the sheared curve from the closed substitution
/// (y2 (1 - b1 z1) + z2 (b1 y1 - b2)) / (1 - b1 z1)^3.
Jet sheared_y2(const SpaceGraphJet& g, double b1, double b2);

}  // namespace projinv
