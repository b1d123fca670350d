#include "projinv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "projinv/planeinv.hpp"
#include "projinv/projection.hpp"
#include "projinv/spaceinv.hpp"
#include "rng.hpp"

namespace projinv {
namespace {

constexpr int kCompareDepth = 7;  // graph jet entries compared by equivariance checks
constexpr double kFaultFactor = 1e-3;
// Central images of points with |z| below this fraction of |w| carry roundoff
// amplified by (|w| / |z|)^k in the order-k jet entries.
constexpr double kMinCentralDepth = 0.1;

struct CheckInfo {
  CheckId id;
  std::string_view name;
  double tolerance;
};

constexpr std::array<CheckInfo, 12> kChecks{{
    {CheckId::EtaPullback, "ETA_PULLBACK", 1e-7},
    {CheckId::EtaRoutes, "ETA_ROUTES", 1e-7},
    {CheckId::Frenet, "FRENET", 1e-8},
    {CheckId::BetaDual, "BETA_DUAL", 1e-9},
    {CheckId::ZetaRelation, "ZETA_RELATION", 1e-7},
    {CheckId::KappaRecovery, "KAPPA_RECOVERY", 1e-7},
    {CheckId::XiDensity, "XI_DENSITY", 1e-10},
    {CheckId::NuParallelPullback, "NU_PARALLEL_PULLBACK", 1e-7},
    {CheckId::ClassifierPullbacks, "CLASSIFIER_PULLBACKS", 1e-8},
    {CheckId::RecurrenceDual, "RECURRENCE_DUAL", 1e-9},
    {CheckId::EquivarianceCentral, "EQUIVARIANCE_CENTRAL", 1e-9},
    {CheckId::EquivarianceParallel, "EQUIVARIANCE_PARALLEL", 1e-9},
}};

const CheckInfo& info(CheckId id) {
  for (const auto& c : kChecks) {
    if (c.id == id) return c;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown check");
}

SpaceGuards lenient() {
  SpaceGuards g;
  g.consistency = std::numeric_limits<double>::infinity();
  return g;
}

double graph_gap(const PlaneGraphJet& a, const PlaneGraphJet& b) {
  const int depth = std::min({a.depth(), b.depth(), kCompareDepth});
  double gap = 0.0;
  for (int k = 0; k <= depth; ++k) {
    gap = std::max(gap, relative_residual(a.at(k).value(), b.at(k).value()));
  }
  return gap;
}

class PointEvaluator {
 public:
  PointEvaluator(CheckId id, const VerifyOptions& opts) : id_(id), opts_(opts) {}

  // Residual at t; guard failures propagate as projinv::Error.
  double operator()(const CurveSpec& curve, double t, std::uint64_t point_seed) const {
    const SpaceCurveJet w = eval_space_jet(curve, t, opts_.order);
    const double fault = opts_.inject_fault ? 1.0 + kFaultFactor : 1.0;
    switch (id_) {
      case CheckId::EtaPullback: {
        const PlaneGraphJet image_graph = central_image(w);
        const double image = projective(image_graph).eta.value();
        const double source = eta_hat(w, EtaRoute::Sigma).value() * fault;
        return relative_residual(image, source);
      }
      case CheckId::EtaRoutes: return eta_routes(w, fault);
      case CheckId::Frenet: {
        const FrenetTerms f = frenet_terms(w);
        return (f.w_sss - f.tau * fault * f.w + f.kappa * f.w_s).norm();
      }
      case CheckId::BetaDual: {
        const CentroInvariants c = centro_affine(w, lenient());
        c.beta_hat.get();
        return std::max(c.beta_route_gap, opts_.inject_fault ? kFaultFactor : 0.0);
      }
      case CheckId::ZetaRelation: {
        const PlaneGraphJet image_graph = central_image(w);
        const ZetaRelation z = zeta_relation(w, image_graph, lenient());
        return std::max(z.mu_chi_residual * fault + (fault - 1.0),
                        z.zeta_hat1_residual * (1e-7 / 1e-9));
      }
      case CheckId::KappaRecovery: {
        const PlaneGraphJet image_graph = central_image(w);
        const ProjectiveInvariants proj = projective(image_graph);
        const Jet zeta = w.z * pow_thirds(equi_affine(image_graph).mu_chi.get(), -1);
        const Jet kappa = recover_kappa(proj.eta.get(), zeta, proj.xi.density.get());
        const double direct = centro_equi_affine(w).kappa.value() * fault;
        return relative_residual(kappa.value(), direct);
      }
      case CheckId::XiDensity: {
        const PlaneGraphJet image_graph = central_image(w);
        const ZetaRelation z = zeta_relation(w, image_graph, lenient());
        const double source = centro_affine(w, lenient()).dxi.value() * fault;
        const double image = projective(image_graph).xi.density.value();
        return std::max(z.density_residual, relative_residual(source, image));
      }
      case CheckId::NuParallelPullback: return nu_parallel(w, fault);
      case CheckId::ClassifierPullbacks: {
        const LineConicPullback p = line_conic_pullback(w);
        return std::max(relative_residual(p.y2_image, p.y2_source * fault),
                        relative_residual(p.a_image, p.a_source));
      }
      case CheckId::RecurrenceDual: {
        const NormalizedInvariants n = normalized_invariants(w, lenient());
        return std::max(n.recurrence_gap, opts_.inject_fault ? kFaultFactor : 0.0);
      }
      case CheckId::EquivarianceCentral:
      case CheckId::EquivarianceParallel: return equivariance(w, point_seed, fault);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown check");
  }

 private:
  static double eta_routes(const SpaceCurveJet& w, double fault) {
    std::vector<double> values;
    for (EtaRoute r : kAllEtaRoutes) {
      try {
        values.push_back(eta_hat(w, r, lenient()).value());
      } catch (const Error& e) {
        // branch restrictions only remove a route; other guards void the point
        if (e.kind() != ErrorKind::NegativeAlphaBranch &&
            e.kind() != ErrorKind::NegativeKappaBranch) {
          throw;
        }
      }
    }
    if (values.size() < 2) {
      throw Error(ErrorKind::NegativeAlphaBranch, "fewer than two routes defined");
    }
    values.front() *= fault;
    double gap = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        gap = std::max(gap, relative_residual(values[i], values[j]));
      }
    }
    return gap;
  }

  static double nu_parallel(const SpaceCurveJet& w, double fault) {
    static constexpr std::array<std::array<double, 2>, 3> kShifts{
        {{0.0, 0.0}, {0.3, -0.2}, {-0.5, 0.1}}};
    double gap = -1.0;
    Error last(ErrorKind::AllPointsSingular, "no parallel direction usable");
    for (const auto& b : kShifts) {
      try {
        const PlaneGraphJet image = to_graph(project(ProjectionSpec::parallel(b[0], b[1]), w));
        const double nu = affine(image).nu.value();
        const double pulled = parallel_family_pullback(w, b[0], b[1]).value() * fault;
        const SpaceGraphJet src = space_to_graph(w);
        const SpaceGraphJet sheared = space_to_graph(act_space(Affine3::shear(-b[0], -b[1]), w));
        const double y2 = relative_residual(sheared_y2(src, b[0], b[1]).value(),
                                            sheared.y[2].value());
        gap = std::max({gap, relative_residual(nu, pulled), y2 * (1e-7 / 1e-10)});
      } catch (const Error& e) {
        last = e;
      }
    }
    if (gap < 0.0) throw last;
    return gap;
  }

  double equivariance(const SpaceCurveJet& w, std::uint64_t point_seed, double fault) const {
    const bool central = id_ == CheckId::EquivarianceCentral;
    if (central) require_depth(w);
    double gap = -1.0;
    Error last(ErrorKind::AllPointsSingular, "no trial usable");
    for (int j = 0; j < opts_.trials_per_point; ++j) {
      const std::uint64_t seed = detail::mix_seed(point_seed, static_cast<std::uint64_t>(j));
      Affine3 g =
          std::get<Affine3>(random_group_element(seed, central ? GroupKind::GL3 : GroupKind::H));
      try {
        ProjectionSpec p = ProjectionSpec::central();
        if (!central) {
          // P_b = P_0 o shear(-b), so shear(b) h shear(-b) descends to the
          // planar part of h under P_b.
          detail::UniformSource rng(detail::mix_seed(seed, 0xb));
          const double b1 = 0.5 * rng.symmetric(), b2 = 0.5 * rng.symmetric();
          p = ProjectionSpec::parallel(b1, b2);
          const Affine2 planar = planar_part(g);
          g = Affine3::shear(b1, b2) * g * Affine3::shear(-b1, -b2);
          const PlaneGraphJet lhs = to_graph(project(p, act_space(g, w)));
          PlaneCurveJet image = act_plane_affine(planar, project(p, w));
          image.Y *= fault;
          gap = std::max(gap, graph_gap(lhs, to_graph(image)));
          continue;
        }
        const SpaceCurveJet moved = act_space(g, w);
        require_depth(moved);
        const PlaneGraphJet lhs = to_graph(project(p, moved));
        PlaneCurveJet image = act_projective(Projective2(g.A), project(p, w));
        image.Y *= fault;
        gap = std::max(gap, graph_gap(lhs, to_graph(image)));
      } catch (const Error& e) {
        last = e;
      }
    }
    if (gap < 0.0) throw last;
    return gap;
  }

  static PlaneGraphJet central_image(const SpaceCurveJet& w) {
    require_depth(w);
    return aligned_graph(project(ProjectionSpec::central(), w));
  }

  static void require_depth(const SpaceCurveJet& w) {
    const Eigen::Vector3d p(w.x.value(), w.y.value(), w.z.value());
    if (!(std::abs(p.z()) > kMinCentralDepth * p.norm())) {
      throw Error(ErrorKind::CenterPlaneSingularity,
                  "central image too close to the line at infinity");
    }
  }

  CheckId id_;
  const VerifyOptions& opts_;
};

// Expected factor helpers.
double det_of(const GroupElement& g) {
  if (const auto* a = std::get_if<Affine3>(&g)) return a->A.determinant();
  if (const auto* a = std::get_if<Affine2>(&g)) return a->A.determinant();
  return 1.0;
}

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

[[noreturn]] void mismatch(FuzzQuantity q, const char* why) {
  throw Error(ErrorKind::GroupMismatch, std::string(to_string(q)) + ": " + why);
}

struct QuantityInfo {
  FuzzQuantity q;
  std::string_view name;
};

constexpr std::array<QuantityInfo, 14> kQuantities{{
    {FuzzQuantity::Mu, "mu"},
    {FuzzQuantity::Nu, "nu"},
    {FuzzQuantity::Eta, "eta"},
    {FuzzQuantity::Kappa, "kappa"},
    {FuzzQuantity::Tau, "tau"},
    {FuzzQuantity::KappaHat, "kappa_hat"},
    {FuzzQuantity::TauHat, "tau_hat"},
    {FuzzQuantity::AlphaHat, "alpha_hat"},
    {FuzzQuantity::BetaHat, "beta_hat"},
    {FuzzQuantity::EtaHat, "eta_hat"},
    {FuzzQuantity::ZetaHat1, "zeta_hat1"},
    {FuzzQuantity::ZetaTilde, "zeta_tilde"},
    {FuzzQuantity::NuHat, "nu_hat"},
    {FuzzQuantity::IotaHatZ4, "iota_hat_z4"},
}};

double plane_value(FuzzQuantity q, const PlaneCurveJet& c) {
  const PlaneGraphJet g = aligned_graph(c);
  switch (q) {
    case FuzzQuantity::Mu: return equi_affine(g).mu.value();
    case FuzzQuantity::Nu: return affine(g).nu.value();
    case FuzzQuantity::Eta: return projective(g).eta.value();
    default: break;
  }
  throw Error(ErrorKind::DimensionMismatch, "space quantity on a plane curve");
}

double space_value(FuzzQuantity q, const SpaceCurveJet& w) {
  switch (q) {
    case FuzzQuantity::Kappa: return centro_equi_affine(w).kappa.value();
    case FuzzQuantity::Tau: return centro_equi_affine(w).tau.value();
    case FuzzQuantity::KappaHat: return centro_affine(w).kappa_hat.value();
    case FuzzQuantity::TauHat: return centro_affine(w).tau_hat.value();
    case FuzzQuantity::AlphaHat: return centro_affine(w).alpha_hat.value();
    case FuzzQuantity::BetaHat: return centro_affine(w).beta_hat.value();
    case FuzzQuantity::EtaHat: return eta_hat(w, EtaRoute::Sigma).value();
    case FuzzQuantity::ZetaHat1: return centro_affine(w).zeta_hat1.value();
    case FuzzQuantity::ZetaTilde: return centro_affine(w).zeta_tilde.value();
    case FuzzQuantity::NuHat: return parallel_invariants(aligned_space_graph(w)).nu_hat.value();
    case FuzzQuantity::IotaHatZ4:
      return parallel_invariants(aligned_space_graph(w)).iota_hat_z4.value();
    default: break;
  }
  throw Error(ErrorKind::DimensionMismatch, "plane quantity on a space curve");
}

// A fractional linear map evaluated near the line at infinity, or with a
// strongly anisotropic local linearization, moves most of the jet's
// information into the last few bits of its coefficients.
void require_projective_conditioning(const Projective2& g, const PlaneCurveJet& c) {
  constexpr double kMinDepth = 0.2;
  constexpr double kMaxAnisotropy = 100.0;
  const Eigen::Matrix3d& A = g.matrix();
  const Eigen::Vector3d q = A * Eigen::Vector3d(c.X.value(), c.Y.value(), 1.0);
  if (!(std::abs(q.z()) >= kMinDepth * q.norm())) {
    throw Error(ErrorKind::OnHyperplaneAtInfinity, "transformed point too close to the line at infinity");
  }
  Eigen::Matrix2d J;
  for (int r = 0; r < 2; ++r) {
    for (int k = 0; k < 2; ++k) J(r, k) = A(r, k) * q.z() - q(r) * A(2, k);
  }
  const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix2d>(J).singularValues();
  if (!(sv(0) <= kMaxAnisotropy * sv(1))) {
    throw Error(ErrorKind::OnHyperplaneAtInfinity, "transformed jet is too anisotropic");
  }
}

std::string reason_of(const Error& e) { return e.what(); }

}  // namespace

std::string_view to_string(CheckId id) { return info(id).name; }

CheckId check_from_string(std::string_view name) {
  for (const auto& c : kChecks) {
    if (c.name == name) return c.id;
  }
  throw Error(ErrorKind::UnknownIdentifier, "unknown identity check '" + std::string(name) + "'");
}

double default_tolerance(CheckId id) { return info(id).tolerance; }

std::vector<double> SampleWindow::points() const {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "window needs at least one sample");
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ts.push_back(n == 1 ? t0 : t0 + (t1 - t0) * i / (n - 1));
  return ts;
}

SampleWindow SampleWindow::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument, "window must look like a:b:n");
  }
  try {
    SampleWindow w;
    std::size_t used = 0;
    const std::string a(text.substr(0, first)), b(text.substr(first + 1, second - first - 1)),
        n(text.substr(second + 1));
    w.t0 = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    w.t1 = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    w.n = std::stoi(n, &used);
    if (used != n.size() || w.n < 1) throw std::invalid_argument(n);
    return w;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "malformed window '" + std::string(text) + "'");
  }
}

std::string_view to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Pass: return "PASS";
    case PointStatus::Fail: return "FAIL";
    case PointStatus::Skip: return "SKIP";
  }
  return "?";
}

double IdentityReport::max_residual() const {
  double m = 0.0;
  for (const auto& p : points) {
    if (p.status != PointStatus::Skip) m = std::max(m, p.residual);
  }
  return m;
}

int IdentityReport::count(PointStatus s) const {
  return static_cast<int>(std::count_if(points.begin(), points.end(),
                                        [s](const PointResult& p) { return p.status == s; }));
}

IdentityReport check_identity(const CurveSpec& curve, CheckId check, const VerifyOptions& options) {
  if (curve.dimension != 3) {
    throw Error(ErrorKind::DimensionMismatch, "identity checks run on space curves");
  }
  IdentityReport report;
  report.check = check;
  report.curve = curve.label;
  report.tolerance = options.tolerance.value_or(default_tolerance(check));
  const PointEvaluator eval(check, options);
  const auto ts = options.window.points();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    PointResult p;
    p.t = ts[i];
    try {
      p.residual = eval(curve, p.t, detail::mix_seed(options.seed, i));
      p.status = p.residual < report.tolerance ? PointStatus::Pass : PointStatus::Fail;
    } catch (const Error& e) {
      p.status = PointStatus::Skip;
      p.reason = reason_of(e);
    }
    report.points.push_back(std::move(p));
  }
  if (report.count(PointStatus::Skip) == static_cast<int>(report.points.size())) {
    // guard kinds with counts, in order of first appearance
    std::vector<std::pair<std::string, int>> kinds;
    for (const auto& p : report.points) {
      const std::string kind = p.reason.substr(0, p.reason.find(':'));
      auto it = std::find_if(kinds.begin(), kinds.end(), [&](const auto& k) { return k.first == kind; });
      if (it == kinds.end()) {
        kinds.emplace_back(kind, 1);
      } else {
        ++it->second;
      }
    }
    std::string summary;
    for (const auto& [kind, n] : kinds) {
      summary += (summary.empty() ? "" : ", ") + kind + " x" + std::to_string(n);
    }
    throw Error(ErrorKind::AllPointsSingular, std::string(to_string(check)) + " on " + curve.label +
                                                  ": every sample failed a guard (" + summary + ")");
  }
  report.passed = report.count(PointStatus::Fail) == 0;
  return report;
}

std::string to_json(const IdentityReport& r) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.points) {
    nlohmann::json j{{"t", p.t}, {"residual", p.residual}, {"status", to_string(p.status)}};
    if (!p.reason.empty()) j["reason"] = p.reason;
    pts.push_back(std::move(j));
  }
  return nlohmann::json{{"check", to_string(r.check)},
                        {"curve", r.curve},
                        {"tolerance", r.tolerance},
                        {"points", std::move(pts)},
                        {"verdict", r.passed ? "PASS" : "FAIL"}}
      .dump();
}

std::string_view to_string(FuzzQuantity q) {
  for (const auto& e : kQuantities) {
    if (e.q == q) return e.name;
  }
  return "?";
}

FuzzQuantity fuzz_quantity_from_string(std::string_view name) {
  for (const auto& e : kQuantities) {
    if (e.name == name) return e.q;
  }
  throw Error(ErrorKind::UnknownIdentifier, "unknown quantity '" + std::string(name) + "'");
}

bool is_plane_quantity(FuzzQuantity q) {
  return q == FuzzQuantity::Mu || q == FuzzQuantity::Nu || q == FuzzQuantity::Eta;
}

double character(FuzzQuantity q, const GroupElement& g) {
  const double det = det_of(g);
  const bool projective_element = std::holds_alternative<Projective2>(g);
  const bool plane_element = !std::holds_alternative<Affine3>(g);
  if (is_plane_quantity(q) != plane_element) mismatch(q, "wrong dimension for the group");
  const Affine3* space = std::get_if<Affine3>(&g);
  const bool linear = space && space->b.isZero(0.0);
  switch (q) {
    case FuzzQuantity::Mu:
      if (projective_element) mismatch(q, "not projectively invariant");
      return 1.0 / (std::cbrt(det) * std::cbrt(det));
    case FuzzQuantity::Nu:
      if (projective_element) mismatch(q, "not projectively invariant");
      return sign(det);
    case FuzzQuantity::Eta: return 1.0;
    case FuzzQuantity::NuHat:
    case FuzzQuantity::IotaHatZ4:
      if (!in_parallel_subgroup(*space)) mismatch(q, "needs the fiber-preserving group");
      return q == FuzzQuantity::NuHat ? sign(space->A.topLeftCorner<2, 2>().determinant()) : 1.0;
    default: break;
  }
  if (!linear) mismatch(q, "centro-affine quantities need a linear map");
  switch (q) {
    case FuzzQuantity::Kappa: return 1.0 / (std::cbrt(det) * std::cbrt(det));
    case FuzzQuantity::Tau: return 1.0 / det;
    case FuzzQuantity::KappaHat:
    case FuzzQuantity::TauHat:
    case FuzzQuantity::AlphaHat: return sign(det);
    case FuzzQuantity::ZetaTilde: return std::cbrt(det);
    default: return 1.0;
  }
}

FuzzReport fuzz_invariance(const CurveSpec& curve, FuzzQuantity quantity, GroupKind group,
                           int trials, std::uint64_t master_seed, double tolerance,
                           const SampleWindow& window, int order) {
  if (is_plane_quantity(quantity) != (curve.dimension == 2)) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(to_string(quantity)) + " does not apply to a " +
                    std::to_string(curve.dimension) + "D curve");
  }
  FuzzReport report;
  report.group = group;
  report.quantity = std::string(to_string(quantity));
  report.trials = trials;
  report.tolerance = tolerance;
  const auto ts = window.points();
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed = detail::mix_seed(master_seed, static_cast<std::uint64_t>(trial));
    const GroupElement g = random_group_element(seed, group);
    const double chi = character(quantity, g);
    bool any = false;
    FuzzFailure worst{seed, 0.0, report.quantity, -1.0};
    for (double t : ts) {
      try {
        double before = 0.0, after = 0.0;
        if (curve.dimension == 2) {
          const PlaneCurveJet c = eval_plane_jet(curve, t, order);
          before = plane_value(quantity, c);
          if (const auto* p = std::get_if<Projective2>(&g)) require_projective_conditioning(*p, c);
          const PlaneCurveJet moved = std::holds_alternative<Affine2>(g)
                                          ? act_plane_affine(std::get<Affine2>(g), c)
                                          : act_projective(std::get<Projective2>(g), c);
          after = plane_value(quantity, moved);
        } else {
          const SpaceCurveJet w = eval_space_jet(curve, t, order);
          before = space_value(quantity, w);
          after = space_value(quantity, act_space(std::get<Affine3>(g), w));
        }
        const double dev = relative_residual(after, chi * before);
        any = true;
        if (dev > worst.deviation) worst = {seed, t, report.quantity, dev};
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::GroupMismatch || e.kind() == ErrorKind::DimensionMismatch) throw;
      }
    }
    if (!any) {
      ++report.skipped;
      continue;
    }
    report.max_deviation = std::max(report.max_deviation, worst.deviation);
    if (!(worst.deviation < tolerance)) report.failures.push_back(worst);
  }
  return report;
}

std::string to_json(const FuzzReport& r) {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : r.failures) {
    fails.push_back({{"seed", f.seed}, {"t", f.t}, {"quantity", f.quantity}, {"deviation", f.deviation}});
  }
  return nlohmann::json{{"group", to_string(r.group)},
                        {"quantity", r.quantity},
                        {"trials", r.trials},
                        {"skipped", r.skipped},
                        {"tolerance", r.tolerance},
                        {"max_deviation", r.max_deviation},
                        {"failures", std::move(fails)},
                        {"verdict", r.passed() ? "PASS" : "FAIL"}}
      .dump();
}

FiniteDifference finite_difference_oracle(const std::function<double(double)>& f, double t, int k,
                                          double h) {
  if (k < 0 || k > 7) throw Error(ErrorKind::InvalidArgument, "derivative order must be 0..7");
  if (k == 0) {
    const double v = f(t);
    return {v, 10.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(v))};
  }
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  double fmax = 0.0;
  auto central = [&](double step) {
    double sum = 0.0, binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      const double v = f(t + (0.5 * k - j) * step);
      fmax = std::max(fmax, std::abs(v));
      sum += (j % 2 == 0 ? binom : -binom) * v;
      binom = binom * (k - j) / (j + 1);
    }
    return sum / std::pow(step, k);
  };
  // Richardson at two levels; the gap between them bounds the coarser one,
  // hence conservatively the finer one we return
  const double d2 = central(2.0 * h), d1 = central(h), d05 = central(0.5 * h);
  const double coarse = (4.0 * d1 - d2) / 3.0;
  const double fine = (4.0 * d05 - d1) / 3.0;
  // f carries a few dozen ulps of evaluation noise when its terms cancel;
  // 4/3 is the weight of the finest difference in the extrapolant
  const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * fmax *
                          (4.0 / 3.0) * std::pow(4.0, k) / std::pow(h, k);
  return {fine, std::abs(fine - coarse) + roundoff};
}

FiniteDifference finite_difference_oracle(const CurveSpec& curve, int component, double t, int k,
                                          double h) {
  return finite_difference_oracle([&](double s) { return eval_component(curve, component, s); }, t,
                                  k, h);
}

double default_fd_step(int k, double t) {
  static constexpr std::array<double, 8> kSteps{0.0, 1e-3, 1e-2, 2e-2, 4e-2, 6e-2, 8e-2, 0.1};
  return kSteps.at(static_cast<std::size_t>(std::clamp(k, 0, 7))) * std::max(1.0, std::abs(t));
}

std::vector<CurveSpec> builtin_space_corpus() {
  std::vector<CurveSpec> corpus{builtin_curve("helix"), builtin_curve("exp_blend")};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    corpus.push_back(random_curve(seed, 3, RandomCurveKind::Poly, 5));
  }
  return corpus;
}

}  // namespace projinv
