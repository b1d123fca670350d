#include "projinv/projection.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "projinv/error.hpp"

namespace projinv {
namespace {

constexpr double kRegularityTol = 1e-8;

}  // namespace

const Jet& PlaneGraphJet::at(int i) const {
  if (i < 0 || i >= static_cast<int>(Y.size())) {
    throw Error(ErrorKind::DepthExhausted,
                "graph jet carries Y_0..Y_" + std::to_string(depth()) + ", need Y_" +
                    std::to_string(i));
  }
  return Y[static_cast<std::size_t>(i)];
}

ProjectionSpec projection_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    if (doc.contains("central")) {
      const auto& c = doc["central"]["center"];
      if (c.size() != 3) throw Error(ErrorKind::InvalidArgument, "center needs 3 entries");
      return ProjectionSpec::central({c[0].get<double>(), c[1].get<double>(), c[2].get<double>()});
    }
    if (doc.contains("parallel")) {
      const auto& b = doc["parallel"]["b"];
      if (b.size() != 2) throw Error(ErrorKind::InvalidArgument, "b needs 2 entries");
      return ProjectionSpec::parallel(b[0].get<double>(), b[1].get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("invalid projection JSON: ") + e.what());
  }
  throw Error(ErrorKind::InvalidArgument, "projection JSON needs 'central' or 'parallel'");
}

std::string to_json(const ProjectionSpec& p) {
  if (const auto* c = std::get_if<CentralProjection>(&p.kind)) {
    return nlohmann::json{{"central", {{"center", {c->center(0), c->center(1), c->center(2)}}}}}
        .dump();
  }
  const auto& b = std::get<ParallelProjection>(p.kind);
  return nlohmann::json{{"parallel", {{"b", {b.b1, b.b2}}}}}.dump();
}

namespace {

ExprPtr minus_scaled(const ExprPtr& a, double k, const ExprPtr& b) {
  if (k == 0.0) return a;
  return make_binary('-', a, k == 1.0 ? b : make_binary('*', make_number(k), b));
}

ExprPtr shifted(const ExprPtr& a, double c) {
  return c == 0.0 ? a : make_binary('-', a, make_number(c));
}

ExprPtr plus(const ExprPtr& a, double c) {
  return c == 0.0 ? a : make_binary('+', a, make_number(c));
}

}  // namespace

CurveSpec project_curve(const ProjectionSpec& p, const CurveSpec& c) {
  if (c.dimension != 3) throw Error(ErrorKind::DimensionMismatch, "projection needs a space curve");
  CurveSpec out;
  out.dimension = 2;
  const auto& x = c.components[0];
  const auto& y = c.components[1];
  const auto& z = c.components[2];
  if (const auto* cp = std::get_if<CentralProjection>(&p.kind)) {
    const ExprPtr depth = shifted(z, cp->center(2));
    // image lies in the plane one unit above the center, in the original frame
    out.components = {plus(make_binary('/', shifted(x, cp->center(0)), depth), cp->center(0)),
                      plus(make_binary('/', shifted(y, cp->center(1)), depth), cp->center(1))};
    out.label = c.label + " (central image)";
  } else {
    const auto& b = std::get<ParallelProjection>(p.kind);
    out.components = {minus_scaled(x, b.b1, z), minus_scaled(y, b.b2, z)};
    out.label = c.label + " (parallel image)";
  }
  return out;
}

PlaneCurveJet project(const ProjectionSpec& p, const SpaceCurveJet& w) {
  if (const auto* c = std::get_if<CentralProjection>(&p.kind)) {
    const Jet depth = w.z - c->center(2);
    if (!(std::abs(depth.value()) > kDefaultEpsDiv)) {
      throw Error(ErrorKind::CenterPlaneSingularity,
                  "curve point lies on the plane through the center parallel to the image");
    }
    return {w.t, (w.x - c->center(0)) / depth + c->center(0),
            (w.y - c->center(1)) / depth + c->center(1)};
  }
  const auto& b = std::get<ParallelProjection>(p.kind);
  return {w.t, w.x - b.b1 * w.z, w.y - b.b2 * w.z};
}

Jet graph_derivative(const Jet& f, const Jet& X) {
  const Jet dX = X.derivative();
  if (!(std::abs(dX.value()) > kDefaultEpsDiv)) {
    throw Error(ErrorKind::VerticalTangent, "dX/dt vanishes at the base point");
  }
  return f.derivative() / dX;
}

PlaneGraphJet to_graph(const PlaneCurveJet& c) {
  const int n = std::min(c.X.order(), c.Y.order());
  PlaneGraphJet g{c.X, {c.Y}};
  for (int i = 1; i <= n - 1; ++i) g.Y.push_back(graph_derivative(g.Y.back(), c.X));
  return g;
}

PlaneGraphJet aligned_graph(const PlaneCurveJet& c) {
  constexpr double kMinScaledY2 = 1e-8;
  const double theta = std::atan2(c.Y[1], c.X[1]);
  Affine2 r;
  r.A << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  PlaneGraphJet g = to_graph(act_plane_affine(r, c));
  if (g.depth() < 2 || !(std::abs(g.Y[2].value()) >= kMinScaledY2)) return g;
  // (X, Y) -> (a X, Y / a) sends Y_k to Y_k / a^(k+1)
  const double a = std::cbrt(std::abs(g.Y[2].value()));
  g.X *= a;
  double f = 1.0 / a;
  for (auto& y : g.Y) {
    y *= f;
    f /= a;
  }
  return g;
}

SpaceGraphJet space_to_graph(const SpaceCurveJet& w) {
  const int n = std::min({w.x.order(), w.y.order(), w.z.order()});
  SpaceGraphJet g{w.x, {w.y}, {w.z}};
  for (int i = 1; i <= n - 1; ++i) {
    g.y.push_back(graph_derivative(g.y.back(), w.x));
    g.z.push_back(graph_derivative(g.z.back(), w.x));
  }
  return g;
}

SpaceGraphJet aligned_space_graph(const SpaceCurveJet& w) {
  const double theta = std::atan2(w.y[1], w.x[1]);
  Affine3 r;
  r.A(0, 0) = std::cos(theta);
  r.A(0, 1) = std::sin(theta);
  r.A(1, 0) = -std::sin(theta);
  r.A(1, 1) = std::cos(theta);
  return space_to_graph(act_space(r, w));
}

RegularityReport regularity(const ProjectionSpec& p, const SpaceCurveJet& w) {
  RegularityReport r;
  if (const auto* c = std::get_if<CentralProjection>(&p.kind)) {
    const double x = w.x.value() - c->center(0), y = w.y.value() - c->center(1),
                 z = w.z.value() - c->center(2);
    const double dx = w.x[1], dy = w.y[1], dz = w.z[1];
    r.defined = std::abs(z) > kDefaultEpsDiv;
    r.first = dx * z - x * dz;
    r.second = dy * z - y * dz;
    r.scale = 1.0 + std::max({std::abs(dx * z), std::abs(x * dz), std::abs(dy * z),
                              std::abs(y * dz)});
  } else {
    const auto& b = std::get<ParallelProjection>(p.kind);
    const double dx = w.x[1], dy = w.y[1], dz = w.z[1];
    r.first = dx - b.b1 * dz;
    r.second = dy - b.b2 * dz;
    r.scale = 1.0 + std::max({std::abs(dx), std::abs(b.b1 * dz), std::abs(dy),
                              std::abs(b.b2 * dz)});
  }
  const double threshold = kRegularityTol * r.scale;
  r.transversal = r.defined && std::max(std::abs(r.first), std::abs(r.second)) > threshold;
  r.nonvertical = r.defined && std::abs(r.first) > threshold;
  return r;
}

CorrespondingJets corresponding_jet(const ProjectionSpec& p, const SpaceCurveJet& w) {
  const RegularityReport r = regularity(p, w);
  if (!r.defined) throw Error(ErrorKind::CenterPlaneSingularity, "z = c3 at the sample");
  if (!r.transversal) {
    throw Error(ErrorKind::DegeneratePoint, "curve is tangent to a projection fiber");
  }
  if (!r.nonvertical) throw Error(ErrorKind::VerticalTangent, "image has a vertical tangent");
  return {to_graph(project(p, w)), space_to_graph(w)};
}

Projective2 induced_projective(const Eigen::Matrix3d& A, const Eigen::Vector3d& center) {
  const Projective2 shift = Projective2::translation(center(0), center(1));
  return shift * Projective2(A) * shift.inverse();
}

}  // namespace projinv
