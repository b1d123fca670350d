#include "projinv/signature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <type_traits>

#include <nlohmann/json.hpp>

#include "projinv/planeinv.hpp"
#include "projinv/projection.hpp"
#include "projinv/spaceinv.hpp"

namespace projinv {
namespace {

struct GroupInfo {
  SignatureGroup group;
  std::string_view name;
  std::string_view short_name;
  int dimension;
  std::array<std::string_view, 2> invariants;
};

constexpr std::array<GroupInfo, 4> kGroups{{
    {SignatureGroup::PGL3Plane, "PGL3_plane", "pgl3", 2, {"eta", "eta_xi"}},
    {SignatureGroup::GL3Space, "GL3_space", "gl3", 3, {"tau_hat", "kappa_hat"}},
    {SignatureGroup::A2Plane, "A2_plane", "a2", 2, {"nu", "nu_rho"}},
    {SignatureGroup::SA2Plane, "SA2_plane", "sa2", 2, {"mu", "mu_chi"}},
}};

const GroupInfo& info(SignatureGroup g) {
  for (const auto& i : kGroups) {
    if (i.group == g) return i;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown signature group");
}

std::array<double, 2> plane_pair(SignatureGroup group, const PlaneCurveJet& c) {
  const PlaneGraphJet g = aligned_graph(c);
  switch (group) {
    case SignatureGroup::PGL3Plane: {
      const ProjectiveInvariants p = projective(g);
      const Jet& eta = p.eta.get();
      return {eta.value(), invariant_derivative(eta, p.xi.density.get()).value()};
    }
    case SignatureGroup::A2Plane: {
      const AffineInvariants a = affine(g);
      const Jet& nu = a.nu.get();
      return {nu.value(), invariant_derivative(nu, a.rho.density.get()).value()};
    }
    case SignatureGroup::SA2Plane: {
      const EquiAffineInvariants e = equi_affine(g);
      return {e.mu.value(), e.mu_chi.value()};
    }
    case SignatureGroup::GL3Space: break;
  }
  throw Error(ErrorKind::DimensionMismatch, "space signature on a plane curve");
}

std::array<double, 2> space_pair(const SpaceCurveJet& w) {
  const CentroInvariants c = centro_affine(w);
  return {c.tau_hat.value(), c.kappa_hat.value()};
}

// Scales the k-th derivative by 1 + delta * sign * (-1)^k.
Jet perturbed(const Jet& j, double delta, double sign) {
  std::vector<double> d(static_cast<std::size_t>(j.order()) + 1);
  for (int k = 0; k <= j.order(); ++k) d[k] = j[k] * (1.0 + delta * sign * (k % 2 == 0 ? 1.0 : -1.0));
  return Jet(j.base_point(), std::move(d));
}

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b);

// Re-evaluates under two relative perturbations of size kProbe of the jet
// coefficients. Samples whose implied roundoff error exceeds kMaxRoundoff
// (relative) are dropped: near poles of a parametrization the invariants are
// determined by the last bits of the jet.
template <typename J, typename F>
void require_conditioned(const J& jet, const std::array<double, 2>& value, F&& pair_of) {
  constexpr double kProbe = 1e-10;
  constexpr double kMaxRoundoff = 1e-6;
  constexpr double kUnitRoundoff = 1e-15;
  double sensitivity = 0.0;
  for (double sign : {1.0, -1.0}) {
    J moved = jet;
    if constexpr (std::is_same_v<J, SpaceCurveJet>) {
      moved.x = perturbed(jet.x, kProbe, sign);
      moved.y = perturbed(jet.y, kProbe, -sign);
      moved.z = perturbed(jet.z, kProbe, sign);
    } else {
      moved.X = perturbed(jet.X, kProbe, sign);
      moved.Y = perturbed(jet.Y, kProbe, -sign);
    }
    sensitivity = std::max(sensitivity, distance(pair_of(moved), value) / kProbe);
  }
  const double scale = 1.0 + std::hypot(value[0], value[1]);
  if (!(sensitivity * kUnitRoundoff <= kMaxRoundoff * scale)) {
    throw Error(ErrorKind::IllConditioned,
                "invariants amplify jet roundoff by " + format_value(sensitivity));
  }
}

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

// max over a of the distance to the nearest point of b
double directed_hausdorff(const std::vector<std::array<double, 2>>& a,
                          const std::vector<std::array<double, 2>>& b) {
  double worst = 0.0;
  for (const auto& p : a) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& q : b) nearest = std::min(nearest, distance(p, q));
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace

std::string_view to_string(SignatureGroup g) { return info(g).name; }

SignatureGroup signature_group_from_string(std::string_view name) {
  for (const auto& i : kGroups) {
    if (name == i.name || name == i.short_name) return i.group;
  }
  throw Error(ErrorKind::UnknownIdentifier, "unknown signature group '" + std::string(name) + "'");
}

int curve_dimension(SignatureGroup g) { return info(g).dimension; }

std::array<std::string_view, 2> invariant_names(SignatureGroup g) { return info(g).invariants; }

double Signature::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, distance(points[i], points[j]));
  }
  return d;
}

Signature sample_signature(const CurveSpec& curve, SignatureGroup group, const SampleWindow& window,
                           int order) {
  if (curve.dimension != curve_dimension(group)) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(to_string(group)) + " needs a " +
                    std::to_string(curve_dimension(group)) + "D curve");
  }
  Signature s;
  s.group = group;
  s.label = curve.label;
  s.window = window;
  for (double t : window.points()) {
    try {
      std::array<double, 2> p{};
      if (group == SignatureGroup::GL3Space) {
        const SpaceCurveJet w = eval_space_jet(curve, t, order);
        p = space_pair(w);
        require_conditioned(w, p, space_pair);
      } else {
        const PlaneCurveJet c = eval_plane_jet(curve, t, order);
        auto pair_of = [group](const PlaneCurveJet& j) { return plane_pair(group, j); };
        p = pair_of(c);
        require_conditioned(c, p, pair_of);
      }
      if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
        throw Error(ErrorKind::DomainError, "non-finite invariant");
      }
      s.t.push_back(t);
      s.points.push_back(p);
    } catch (const Error& e) {
      s.dropped.push_back({t, e.what()});
    }
  }
  if (s.points.size() < 2) {
    throw Error(ErrorKind::InsufficientRegularSamples,
                std::to_string(s.points.size()) + " regular samples of " +
                    std::to_string(window.n) + " for " + std::string(to_string(group)));
  }
  return s;
}

SignatureComparison compare(const Signature& a, const Signature& b, double tol) {
  if (a.group != b.group) {
    throw Error(ErrorKind::GroupMismatch,
                std::string(to_string(a.group)) + " vs " + std::string(to_string(b.group)));
  }
  SignatureComparison r;
  const double raw = std::max(directed_hausdorff(a.points, b.points),
                              directed_hausdorff(b.points, a.points));
  const double scale = std::max(a.diameter(), b.diameter());
  r.degenerate = scale < kDegenerateDiameter;
  r.distance = r.degenerate ? raw : raw / scale;
  r.equivalent = r.distance < tol;
  return r;
}

std::string to_csv(const Signature& s) {
  std::string out = "t,inv1,inv2\n";
  char line[96];
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s.t[i], s.points[i][0], s.points[i][1]);
    out += line;
  }
  return out;
}

std::string to_json(const Signature& s) {
  const auto names = invariant_names(s.group);
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    points.push_back({{"t", s.t[i]}, {"inv1", s.points[i][0]}, {"inv2", s.points[i][1]}});
  }
  nlohmann::json dropped = nlohmann::json::array();
  for (const auto& d : s.dropped) dropped.push_back({{"t", d.t}, {"reason", d.reason}});
  return nlohmann::json{{"group", to_string(s.group)},
                        {"label", s.label},
                        {"window", {{"t0", s.window.t0}, {"t1", s.window.t1}, {"n", s.window.n}}},
                        {"invariants", {names[0], names[1]}},
                        {"points", points},
                        {"dropped", dropped}}
      .dump();
}

Signature signature_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Signature s;
    s.group = signature_group_from_string(j.at("group").get<std::string>());
    s.label = j.value("label", "");
    if (j.contains("window")) {
      const auto& w = j.at("window");
      s.window = {w.at("t0").get<double>(), w.at("t1").get<double>(), w.at("n").get<int>()};
    }
    for (const auto& p : j.at("points")) {
      s.t.push_back(p.at("t").get<double>());
      s.points.push_back({p.at("inv1").get<double>(), p.at("inv2").get<double>()});
    }
    if (j.contains("dropped")) {
      for (const auto& d : j.at("dropped")) {
        s.dropped.push_back({d.at("t").get<double>(), d.at("reason").get<std::string>()});
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("invalid signature JSON: ") + e.what());
  }
}

}  // namespace projinv
