#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "projinv/curve.hpp"
#include "projinv/taylor.hpp"
#include "projinv/transform.hpp"

namespace projinv {

/// Central projection from `center` onto the plane z = 1 + c3:
/// (X, Y) = ((x - c1)/(z - c3) + c1, (y - c2)/(z - c3) + c2).
struct CentralProjection {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

/// Parallel projection along (b1, b2, 1) onto the xy-plane:
/// (X, Y) = (x - b1 z, y - b2 z).
struct ParallelProjection {
  double b1 = 0.0;
  double b2 = 0.0;
};

struct ProjectionSpec {
  std::variant<CentralProjection, ParallelProjection> kind;

  static ProjectionSpec central(const Eigen::Vector3d& center = Eigen::Vector3d::Zero()) {
    return {CentralProjection{center}};
  }
  static ProjectionSpec parallel(double b1 = 0.0, double b2 = 0.0) {
    return {ParallelProjection{b1, b2}};
  }
  bool is_central() const { return std::holds_alternative<CentralProjection>(kind); }
};

/// {"central":{"center":[c1,c2,c3]}} or {"parallel":{"b":[b1,b2]}}.
ProjectionSpec projection_from_json(std::string_view text);
std::string to_json(const ProjectionSpec& p);

/// Jet coordinates of a plane curve with X as independent variable:
/// Y[i] = d^i Y / dX^i, each a jet in the curve parameter t.
struct PlaneGraphJet {
  Jet X;
  std::vector<Jet> Y;

  int depth() const { return static_cast<int>(Y.size()) - 1; }
  const Jet& at(int i) const;
};

/// Jet coordinates of a space curve with x as independent variable.
struct SpaceGraphJet {
  Jet x;
  std::vector<Jet> y;
  std::vector<Jet> z;

  int depth() const { return static_cast<int>(y.size()) - 1; }
};

/// Image curve as component expressions: ((x - c1)/(z - c3), (y - c2)/(z - c3))
/// for a central projection, (x - b1 z, y - b2 z) for a parallel one.
CurveSpec project_curve(const ProjectionSpec& p, const CurveSpec& c);

/// Throws CenterPlaneSingularity when z(t0) = c3 for a central projection.
PlaneCurveJet project(const ProjectionSpec& p, const SpaceCurveJet& w);

/// Repeated division by dX/dt. Y_i is returned for i <= N - 1 where N is the
/// source order. Throws VerticalTangent when dX/dt vanishes at the base point.
PlaneGraphJet to_graph(const PlaneCurveJet& c);
/// Graph jets after rotating the image so its tangent at the base point is
/// horizontal and, unless |Y_2| < 1e-8, applying diag(a, 1/a) with
/// a = cbrt|Y_2| so that |Y_2| = 1. Both maps lie in SA(2), so mu, nu, eta and
/// their arc densities are those of to_graph(c), while the jets stay well
/// scaled near vertical tangents and far from the origin.
PlaneGraphJet aligned_graph(const PlaneCurveJet& c);
SpaceGraphJet space_to_graph(const SpaceCurveJet& w);
/// space_to_graph after a rotation about the z axis that makes (x, y)
/// tangent to the x axis. Invariants of the H action are unchanged.
SpaceGraphJet aligned_space_graph(const SpaceCurveJet& w);

/// D_X f = (df/dt) / (dX/dt).
Jet graph_derivative(const Jet& f, const Jet& X);

struct RegularityReport {
  bool defined = true;      // false on the plane z = c3 of a central projection
  bool transversal = false;
  bool nonvertical = false;
  /// Numerators of d/dt of the projected coordinates: for central projection
  /// x' z - x z' and y' z - y z' (after translating the center to the origin);
  /// for parallel projection X' and Y'.
  double first = 0.0;
  double second = 0.0;
  double scale = 1.0;
};

/// Regularity thresholds are |quantity| > 1e-8 * scale, where scale is 1 plus
/// the largest product entering the numerators.
RegularityReport regularity(const ProjectionSpec& p, const SpaceCurveJet& w);

struct CorrespondingJets {
  PlaneGraphJet image;
  SpaceGraphJet source;
};

/// Image and source graph jets at the same parameter value.
CorrespondingJets corresponding_jet(const ProjectionSpec& p, const SpaceCurveJet& w);

/// The planar map induced on the image by a linear map A under central
/// projection from `center`: T_c [A] T_c^{-1}.
Projective2 induced_projective(const Eigen::Matrix3d& A, const Eigen::Vector3d& center);

}  // namespace projinv
