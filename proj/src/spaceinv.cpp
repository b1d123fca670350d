#include "projinv/spaceinv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "projinv/planeinv.hpp"
#include "projinv/transform.hpp"

namespace projinv {
namespace {

struct V3 {
  Jet x, y, z;

  V3 d() const { return {x.derivative(), y.derivative(), z.derivative()}; }
  V3 over(const Jet& s) const { return {x / s, y / s, z / s}; }
  double norm() const {
    return std::sqrt(x.value() * x.value() + y.value() * y.value() + z.value() * z.value());
  }
};

Jet triple(const V3& a, const V3& b, const V3& c) {
  return det3(a.x, a.y, a.z, b.x, b.y, b.z, c.x, c.y, c.z);
}

V3 position(const SpaceCurveJet& w) { return {w.x, w.y, w.z}; }

[[noreturn]] void inconsistent(const std::string& what, double gap) {
  throw Error(ErrorKind::InternalInconsistency,
              what + " routes disagree, relative gap " + format_value(gap));
}

struct EquiCore {
  Jet Delta, ds, kappa, tau;
  V3 w, ws, wss, wsss;
  double gap = 0.0;
};

EquiCore equi_core(const SpaceCurveJet& curve, const SpaceGuards& guards) {
  EquiCore c;
  c.w = position(curve);
  const V3 wt = c.w.d();
  const V3 wtt = wt.d();
  const V3 wttt = wtt.d();
  c.Delta = triple(c.w, wt, wtt);
  const double scale = 1.0 + c.w.norm() * wt.norm() * wtt.norm();
  if (!(std::abs(c.Delta.value()) > guards.min_delta * scale)) {
    throw Error(ErrorKind::DegeneratePoint,
                "Delta = " + format_value(c.Delta.value()) + ", curve lies in a plane through 0");
  }
  c.ds = cbrt(c.Delta);
  c.kappa = -0.5 * pow_thirds(c.Delta, -2).derivative().derivative() +
            triple(c.w, wtt, wttt) * pow_thirds(c.Delta, -5);
  c.tau = triple(wt, wtt, wttt) * powi(c.Delta, -2);

  c.ws = wt.over(c.ds);
  c.wss = c.ws.d().over(c.ds);
  c.wsss = c.wss.d().over(c.ds);
  const Jet kappa_arc = triple(c.w, c.wss, c.wsss);
  c.gap = relative_residual(c.kappa.value(), kappa_arc.value());
  if (c.gap > guards.consistency) inconsistent("kappa", c.gap);
  return c;
}

Jet d_by(const Jet& f, const Jet& density) { return f.derivative() / density; }

void require_kappa(const Jet& kappa, const SpaceGuards& guards) {
  if (!(std::abs(kappa.value()) > guards.min_kappa)) {
    throw Error(ErrorKind::ZeroKappa, "kappa = " + format_value(kappa.value()));
  }
}

struct AlphaCore {
  Jet kappa_s, tau_s, alpha;
};

AlphaCore alpha_core(const EquiCore& e) {
  AlphaCore a;
  a.kappa_s = d_by(e.kappa, e.ds);
  a.tau_s = d_by(e.tau, e.ds);
  a.alpha = a.kappa_s + 2.0 * e.tau;
  return a;
}

void require_alpha(const AlphaCore& a, const EquiCore& e, const SpaceGuards& guards) {
  const double scale = std::abs(a.kappa_s.value()) + 2.0 * std::abs(e.tau.value());
  if (!(std::abs(a.alpha.value()) > guards.min_alpha * scale)) {
    throw Error(ErrorKind::ZeroAlpha,
                "kappa_s + 2 tau = " + format_value(a.alpha.value()) +
                    ", the central image is a conic");
  }
}

struct HatCore {
  int eps = 1;
  Jet K32, kappa_hat, tau_hat, alpha_hat, dsigma;
};

HatCore hat_core(const EquiCore& e, const AlphaCore& a, const SpaceGuards& guards) {
  require_kappa(e.kappa, guards);
  HatCore h;
  h.eps = e.kappa.value() > 0.0 ? 1 : -1;
  const Jet K = static_cast<double>(h.eps) * e.kappa;
  h.K32 = pow(K, 1.5);
  h.kappa_hat = a.kappa_s / h.K32;
  h.tau_hat = e.tau / h.K32;
  h.alpha_hat = a.alpha / h.K32;
  h.dsigma = sqrt(K) * e.ds;
  return h;
}

Jet eta_sigma(const HatCore& h) {
  const double eps = h.eps;
  const Jet& ah = h.alpha_hat;
  const Jet a1 = d_by(ah, h.dsigma);
  const Jet a2 = d_by(a1, h.dsigma);
  const Jet k1 = d_by(h.kappa_hat, h.dsigma);
  const Jet tail = eps * k1 + 0.25 * h.kappa_hat * h.kappa_hat - eps;
  return (pow_thirds(ah, -5) * a2 - (7.0 / 6.0) * pow_thirds(ah, -8) * a1 * a1 +
          1.5 * pow_thirds(ah, -2) * tail) /
         std::cbrt(9.0);
}

Jet eta_s(const EquiCore& e, const AlphaCore& a) {
  const Jet& al = a.alpha;
  const Jet a1 = d_by(al, e.ds);
  const Jet a2 = d_by(a1, e.ds);
  return (a2 * al - (7.0 / 6.0) * a1 * a1 - 1.5 * e.kappa * al * al) * pow_thirds(al, -8) /
         std::cbrt(9.0);
}

Jet eta_zeta(const EquiCore& e, const AlphaCore& a) {
  if (!(a.alpha.value() > 0.0)) {
    throw Error(ErrorKind::NegativeAlphaBranch, "the square root of zeta needs alpha > 0");
  }
  const Jet zeta = pow_thirds(3.0 * a.alpha, -1);
  const Jet root = sqrt(zeta);
  const Jet root_ss = d_by(d_by(root, e.ds), e.ds);
  return -6.0 * pow(zeta, 1.5) * (root_ss + 0.25 * e.kappa * root);
}

struct Normalized {
  Jet I5, I6, I7, J3, J4, J5;
  double gap = 0.0;
};

Normalized normalized_core(const HatCore& h, const SpaceGuards& guards) {
  if (h.eps < 0) {
    throw Error(ErrorKind::NegativeKappaBranch,
                "normalized invariants are tabulated for kappa > 0 only");
  }
  const Jet& k = h.kappa_hat;
  const Jet& t = h.tau_hat;
  const Jet k1 = d_by(k, h.dsigma), t1 = d_by(t, h.dsigma);
  const Jet k2 = d_by(k1, h.dsigma), t2 = d_by(t1, h.dsigma);

  Normalized n;
  n.J3 = t;
  n.J4 = t1 + 1.5 * k * t;
  n.J5 = t2 + 1.5 * k1 * t + 3.5 * k * t1 + 3.0 * k * k * t + 9.0 * t;
  n.I5 = 3.0 * k - 4.0 * t;
  n.I6 = 3.0 * k1 - 9.0 * t1 + 4.5 * k * k - 13.5 * k * t + 45.0;
  n.I7 = 3.0 * k2 - 15.0 * t2 + 15.0 * k * k1 - 22.5 * k1 * t - 52.5 * k * t1 + 9.0 * k * k * k -
         45.0 * k * k * t + 153.0 * k - 198.0 * t;

  const Jet J4r = d_by(n.J3, h.dsigma) + 0.5 * n.I5 * n.J3 + 2.0 * n.J3 * n.J3;
  const Jet J5r = d_by(n.J4, h.dsigma) + (2.0 / 3.0) * n.I5 * n.J4 +
                  (8.0 / 3.0) * n.J3 * n.J4 + 9.0 * n.J3;
  const Jet I6r = d_by(n.I5, h.dsigma) + 0.5 * n.I5 * n.I5 + 2.0 * n.I5 * n.J3 - 5.0 * n.J4 + 45.0;
  const Jet I7r = d_by(n.I6, h.dsigma) + (2.0 / 3.0) * n.I5 * n.I6 +
                  (8.0 / 3.0) * n.I6 * n.J3 + 21.0 * n.I5 - 6.0 * n.J5 - 60.0 * n.J3;
  n.gap = std::max({relative_residual(J4r.value(), n.J4.value()),
                    relative_residual(J5r.value(), n.J5.value()),
                    relative_residual(I6r.value(), n.I6.value()),
                    relative_residual(I7r.value(), n.I7.value())});
  if (n.gap > guards.consistency) inconsistent("normalized invariant", n.gap);
  return n;
}

Jet eta_normalized(const Normalized& n) {
  const Jet base = n.I5 + 10.0 * n.J3;
  const Jet sq = n.I6 + 15.0 * n.J4 - 45.0;
  return (3.0 * base * (2.0 * n.I7 + 42.0 * n.J5 - 105.0 * (n.I5 + 4.0 * n.J3)) -
          7.0 * sq * sq) /
         (6.0 * pow_thirds(base, 8));
}

InvariantJet invalid(std::string name, const Error& e) {
  return {std::move(name), std::nullopt, e.kind(), e.detail()};
}

InvariantJet valid(std::string name, Jet j) { return {std::move(name), std::move(j), {}, {}}; }

}  // namespace

CentroEquiAffine centro_equi_affine(const SpaceCurveJet& w, const SpaceGuards& guards) {
  const EquiCore c = equi_core(w, guards);
  return {valid("Delta", c.Delta), valid("ds", c.ds), valid("kappa", c.kappa),
          valid("tau", c.tau), c.gap};
}

FrenetTerms frenet_terms(const SpaceCurveJet& w, const SpaceGuards& guards) {
  const EquiCore c = equi_core(w, guards);
  auto vec = [](const V3& v) { return Eigen::Vector3d(v.x.value(), v.y.value(), v.z.value()); };
  return {vec(c.w), vec(c.ws), vec(c.wsss), c.kappa.value(), c.tau.value()};
}

double frenet_residual(const SpaceCurveJet& w, const SpaceGuards& guards) {
  const FrenetTerms f = frenet_terms(w, guards);
  return (f.w_sss - f.tau * f.w + f.kappa * f.w_s).norm();
}

CentroInvariants centro_affine(const SpaceCurveJet& w, const SpaceGuards& guards) {
  CentroInvariants r;
  auto fill = [&r](std::initializer_list<InvariantJet CentroInvariants::*> fields,
                   const Error& e) {
    for (auto field : fields) {
      (r.*field).jet.reset();
      (r.*field).failure = e.kind();
      (r.*field).reason = e.detail();
    }
  };
  using C = CentroInvariants;

  EquiCore e;
  try {
    e = equi_core(w, guards);
  } catch (const Error& err) {
    fill({&C::Delta, &C::kappa, &C::tau, &C::kappa_s, &C::alpha, &C::kappa_hat, &C::tau_hat,
          &C::alpha_hat, &C::beta_hat, &C::zeta_tilde, &C::zeta_hat1, &C::eta_hat, &C::ds,
          &C::dsigma, &C::dxi},
         err);
    return r;
  }
  r.Delta = valid("Delta", e.Delta);
  r.ds = valid("ds", e.ds);
  r.kappa = valid("kappa", e.kappa);
  r.tau = valid("tau", e.tau);
  r.kappa_sign = e.kappa.value() < 0.0 ? -1 : 1;

  const AlphaCore a = alpha_core(e);
  r.kappa_s = valid("kappa_s", a.kappa_s);
  r.alpha = valid("alpha", a.alpha);

  bool alpha_ok = true;
  try {
    require_alpha(a, e, guards);
    const Jet three_alpha = 3.0 * a.alpha;
    r.zeta_tilde = valid("zeta_tilde", pow_thirds(three_alpha, -1));
    r.zeta_hat1 = valid("zeta_hat1", -d_by(a.alpha, e.ds) * pow_thirds(three_alpha, -4));
    r.dxi = valid("dxi", cbrt(three_alpha) * e.ds);
  } catch (const Error& err) {
    alpha_ok = false;
    fill({&C::zeta_tilde, &C::zeta_hat1, &C::dxi, &C::eta_hat}, err);
  }

  HatCore h;
  try {
    h = hat_core(e, a, guards);
  } catch (const Error& err) {
    fill({&C::kappa_hat, &C::tau_hat, &C::alpha_hat, &C::beta_hat, &C::dsigma, &C::eta_hat},
         err);
    return r;
  }
  r.kappa_hat = valid("kappa_hat", h.kappa_hat);
  r.tau_hat = valid("tau_hat", h.tau_hat);
  r.dsigma = valid("dsigma", h.dsigma);
  // alpha_hat = 0 is a value, not a singularity: only quotients by alpha need the guard
  r.alpha_hat = valid("alpha_hat", h.alpha_hat);

  r.beta_hat = guarded("beta_hat", [&] {
    const Jet direct = a.tau_s / (e.kappa * e.kappa);
    const Jet dual = d_by(h.tau_hat, h.dsigma) + (1.5 * h.eps) * h.kappa_hat * h.tau_hat;
    r.beta_route_gap = relative_residual(direct.value(), dual.value());
    if (r.beta_route_gap > guards.consistency) inconsistent("beta_hat", r.beta_route_gap);
    return direct;
  });
  if (alpha_ok) r.eta_hat = guarded("eta_hat", [&] { return eta_sigma(h); });
  return r;
}

std::string to_string(EtaRoute r) {
  switch (r) {
    case EtaRoute::Sigma: return "SIGMA";
    case EtaRoute::S: return "S";
    case EtaRoute::Zeta: return "ZETA";
    case EtaRoute::Normalized: return "NORMALIZED";
  }
  return "?";
}

EtaRoute eta_route_from_string(std::string_view s) {
  for (EtaRoute r : kAllEtaRoutes) {
    if (to_string(r) == s) return r;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown eta route '" + std::string(s) + "'");
}

Jet eta_hat(const SpaceCurveJet& w, EtaRoute route, const SpaceGuards& guards) {
  const EquiCore e = equi_core(w, guards);
  const AlphaCore a = alpha_core(e);
  require_alpha(a, e, guards);
  switch (route) {
    case EtaRoute::S: return eta_s(e, a);
    case EtaRoute::Zeta: return eta_zeta(e, a);
    case EtaRoute::Sigma: return eta_sigma(hat_core(e, a, guards));
    case EtaRoute::Normalized:
      return eta_normalized(normalized_core(hat_core(e, a, guards), guards));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown eta route");
}

NormalizedInvariants normalized_invariants(const SpaceCurveJet& w, const SpaceGuards& guards) {
  const EquiCore e = equi_core(w, guards);
  const Normalized n = normalized_core(hat_core(e, alpha_core(e), guards), guards);
  NormalizedInvariants out;
  out.I5 = n.I5;
  out.I6 = n.I6;
  out.I7 = n.I7;
  out.J3 = n.J3;
  out.J4 = n.J4;
  out.J5 = n.J5;
  out.recurrence_gap = n.gap;
  return out;
}

ZetaRelation zeta_relation(const SpaceCurveJet& w, const PlaneGraphJet& image,
                           const SpaceGuards& guards) {
  const EquiCore e = equi_core(w, guards);
  const AlphaCore a = alpha_core(e);
  require_alpha(a, e, guards);
  const EquiAffineInvariants img = equi_affine(image);
  const Jet& mu_chi = img.mu_chi.get();

  ZetaRelation r;
  const Jet z = w.z;
  r.three_z3_alpha = 3.0 * std::pow(z.value(), 3) * a.alpha.value();
  r.mu_chi = mu_chi.value();
  r.mu_chi_residual = std::abs(r.three_z3_alpha - r.mu_chi) / (1.0 + std::abs(r.mu_chi));

  const Jet three_alpha = 3.0 * a.alpha;
  const Jet zeta = pow_thirds(three_alpha, -1);
  const Jet closed = -d_by(a.alpha, e.ds) * pow_thirds(three_alpha, -4);
  r.zeta_hat1_residual = relative_residual(closed.value(), d_by(zeta, e.ds).value());

  const Jet zeta_image = z * pow_thirds(mu_chi, -1);
  r.zeta_tilde_residual = relative_residual(zeta.value(), zeta_image.value());

  const HatCore h = hat_core(e, a, guards);
  const Jet via_s = cbrt(three_alpha) * e.ds;
  const Jet via_sigma = cbrt(3.0 * h.alpha_hat) * h.dsigma;
  r.density_residual = relative_residual(via_s.value(), via_sigma.value());
  return r;
}

Jet recover_kappa(const Jet& eta, const Jet& zeta, const Jet& dxi_density) {
  if (!(std::abs(zeta.value()) > kDefaultEpsDiv)) {
    throw Error(ErrorKind::DivisionByNearZero, "zeta vanishes");
  }
  const Jet z1 = invariant_derivative(zeta, dxi_density);
  const Jet z2 = invariant_derivative(z1, dxi_density);
  return -(2.0 * eta * zeta * zeta + 6.0 * zeta * z2 - 9.0 * z1 * z1) * powi(zeta, -4) / 3.0;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::TotallyDegenerate: return "TOTALLY_DEGENERATE";
    case Verdict::ConicImage: return "CONIC_IMAGE";
    case Verdict::Regular: return "REGULAR";
  }
  return "?";
}

LineConicPullback line_conic_pullback(const SpaceCurveJet& w, const SpaceGuards& guards) {
  const PlaneGraphJet image = corresponding_jet(ProjectionSpec::central(), w).image;
  const V3 p = position(w);
  const V3 wt = p.d(), wtt = wt.d();
  const double Delta = triple(p, wt, wtt).value();
  double alpha = 0.0;
  if (std::abs(Delta) > guards.min_delta * (1.0 + p.norm() * wt.norm() * wtt.norm())) {
    alpha = alpha_core(equi_core(w, guards)).alpha.value();
  }
  const double xd = w.x[1];
  const double x = w.x.value(), z = w.z.value(), z1 = w.z[1] / xd;
  const double Dx = Delta / (xd * xd * xd);
  const double den = x * z1 - z;

  LineConicPullback r;
  r.y2_image = image.at(2).value();
  r.y2_source = -std::pow(z, 3) * Dx / std::pow(den, 3);
  r.a_image = invariant_A(image).value();
  r.a_source = 27.0 * std::pow(z, 15) * std::pow(Dx, 4) * alpha / std::pow(den, 12);
  return r;
}

Classification classify(const CurveSpec& curve, double t0, double t1, int n, int order,
                        const SpaceGuards& guards) {
  if (curve.dimension != 3) {
    throw Error(ErrorKind::DimensionMismatch, "classify needs a space curve");
  }
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "classify needs at least one sample");
  Classification out;
  bool all_flat = true, all_conic = true;
  for (int i = 0; i < n; ++i) {
    ClassifySample s;
    s.t = n == 1 ? t0 : t0 + (t1 - t0) * i / (n - 1);
    const SpaceCurveJet w = eval_space_jet(curve, s.t, order);
    const V3 p = position(w);
    const V3 wt = p.d(), wtt = wt.d();
    const Jet Delta = triple(p, wt, wtt);
    s.Delta = Delta.value();
    s.delta_zero = !(std::abs(s.Delta) > guards.min_delta * (1.0 + p.norm() * wt.norm() * wtt.norm()));
    if (!s.delta_zero) {
      const EquiCore e = equi_core(w, guards);
      const AlphaCore a = alpha_core(e);
      s.alpha = a.alpha.value();
      try {
        require_alpha(a, e, guards);
      } catch (const Error&) {
        s.alpha_zero = true;
      }
    }
    all_flat = all_flat && s.delta_zero;
    all_conic = all_conic && !s.delta_zero && s.alpha_zero;

    try {
      const LineConicPullback pb = line_conic_pullback(w, guards);
      s.y2_residual = relative_residual(pb.y2_image, pb.y2_source);
      s.a_residual = relative_residual(pb.a_image, pb.a_source);
      s.pullback_checked = true;
      out.max_pullback_residual =
          std::max({out.max_pullback_residual, s.y2_residual, s.a_residual});
    } catch (const Error&) {
      // singular image at this sample; the verdict does not depend on it
    }
    out.samples.push_back(s);
  }
  out.verdict = all_flat    ? Verdict::TotallyDegenerate
                : all_conic ? Verdict::ConicImage
                            : Verdict::Regular;
  return out;
}

CentroInvariants central_offset_invariants(const SpaceCurveJet& w, const Eigen::Vector3d& center,
                                           const SpaceGuards& guards) {
  return centro_affine(act_space(Affine3::translation(-center), w), guards);
}

ParallelInvariants parallel_invariants(const SpaceGraphJet& g, const SpaceGuards& guards) {
  ParallelInvariants r;
  if (g.depth() < 5) {
    throw Error(ErrorKind::DepthExhausted, "parallel invariants need y_5");
  }
  const auto& y = g.y;
  const auto& z = g.z;
  const Jet B = 3.0 * y[2] * y[4] - 5.0 * y[3] * y[3];
  r.iota_z[0] = valid("iota_z", z[0]);
  if (!(B.value() > guards.min_b)) {
    const Error err(ErrorKind::NonConvexProjection, "3 y2 y4 - 5 y3^2 = " + format_value(B.value()));
    r.nu_hat = invalid("nu_hat", err);
    r.rho_hat_density = invalid("drho_hat", err);
    for (int i = 1; i <= 4; ++i) r.iota_z[i] = invalid("iota_z" + std::to_string(i), err);
    r.iota_z_recurrence = r.iota_z;
    r.iota_hat_z4 = invalid("iota_hat_z4", err);
    r.iota_hat_z4_alt = r.iota_hat_z4;
    return r;
  }
  const Jet rootB = sqrt(B);
  const Jet B32 = B * rootB;
  const Jet nu = 3.0 * (9.0 * y[5] * y[2] * y[2] - 45.0 * y[4] * y[3] * y[2] + 40.0 * y[3] * y[3] * y[3]) / B32;
  const Jet drho = rootB / (3.0 * y[2]) * g.x.derivative();
  r.nu_hat = valid("nu_hat", nu);
  r.rho_hat_density = valid("drho_hat", drho);

  const Jet z23 = y[2] * z[3] - y[3] * z[2];
  r.iota_z[1] = valid("iota_z1", 3.0 * y[2] * z[1] / rootB);
  r.iota_z[2] = valid("iota_z2", 3.0 * y[2] * (3.0 * y[2] * z[2] - y[3] * z[1]) / B);
  r.iota_z[3] = valid("iota_z3", 27.0 * y[2] * y[2] * z23 / B32);
  r.iota_z[4] = valid(
      "iota_z4", (81.0 * powi(y[2], 3) * (y[2] * z[4] - 2.0 * y[3] * z[3]) +
                  27.0 * y[2] * y[2] * y[3] * y[3] * z[2] -
                  (27.0 * y[2] * y[4] - 45.0 * y[3] * y[3]) * y[2] * y[3] * z[1]) /
                     (B * B));

  const Jet nu1 = invariant_derivative(nu, drho);
  const Jet nu2 = invariant_derivative(nu1, drho);
  const Jet zr1 = invariant_derivative(z[0], drho);
  const Jet zr2 = invariant_derivative(zr1, drho);
  const Jet zr3 = invariant_derivative(zr2, drho);
  const Jet zr4 = invariant_derivative(zr3, drho);
  r.iota_z_recurrence[0] = r.iota_z[0];
  r.iota_z_recurrence[1] = valid("iota_z1", zr1);
  r.iota_z_recurrence[2] = valid("iota_z2", zr2 + nu * zr1 / 6.0);
  r.iota_z_recurrence[3] =
      valid("iota_z3", zr3 + 0.5 * nu * zr2 + (nu1 / 6.0 + nu * nu / 18.0 + 1.0) * zr1);
  r.iota_z_recurrence[4] = valid(
      "iota_z4", zr4 + nu * zr3 + ((2.0 / 3.0) * nu1 + (11.0 / 36.0) * nu * nu + 4.0) * zr2 +
                     (nu2 / 6.0 + (7.0 / 36.0) * nu * nu1 + nu * nu * nu / 36.0 + nu) * zr1);
  for (int i = 1; i <= 4; ++i) {
    r.recurrence_gap = std::max(r.recurrence_gap, relative_residual(r.iota_z[i].value(),
                                                                    r.iota_z_recurrence[i].value()));
  }

  const double z23_scale =
      std::abs(y[2].value() * z[3].value()) + std::abs(y[3].value() * z[2].value());
  if (!(std::abs(z23.value()) > guards.min_z3 * (1.0 + z23_scale))) {
    const Error err(ErrorKind::DegenerateZ3, "y2 z3 - y3 z2 vanishes");
    r.iota_hat_z4 = invalid("iota_hat_z4", err);
    r.iota_hat_z4_alt = invalid("iota_hat_z4", err);
    return r;
  }
  r.iota_hat_z4 = valid(
      "iota_hat_z4",
      3.0 * (y[2] * (y[2] * z[4] - y[4] * z[2]) - 2.0 * y[3] * z23) / (z23 * rootB));
  r.iota_hat_z4_alt = valid(
      "iota_hat_z4", (r.iota_z[4].get() - 3.0 * r.iota_z[2].get()) / r.iota_z[3].get());
  return r;
}

Jet parallel_family_pullback(const SpaceCurveJet& w, double b1, double b2,
                             const SpaceGuards& guards) {
  const double xd = w.x[1];
  const double fold = xd - b1 * w.z[1];
  if (!(std::abs(fold) > 1e-8 * (1.0 + std::abs(xd) + std::abs(b1 * w.z[1])))) {
    throw Error(ErrorKind::FoldSingularity, "1 - b1 z_1 vanishes");
  }
  const SpaceCurveJet sheared = act_space(Affine3::shear(-b1, -b2), w);
  return parallel_invariants(space_to_graph(sheared), guards).nu_hat.get();
}

Jet sheared_y2(const SpaceGraphJet& g, double b1, double b2) {
  const Jet fold = 1.0 - b1 * g.z[1];
  if (!(std::abs(fold.value()) > 1e-8)) {
    throw Error(ErrorKind::FoldSingularity, "1 - b1 z_1 vanishes");
  }
  return (g.y[2] * fold + g.z[2] * (b1 * g.y[1] - b2)) * powi(fold, -3);
}

}  // namespace projinv
