#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Dense>

#include "projinv/curve.hpp"

namespace projinv {

/// z -> A z + b on R^3. Linear elements (b = 0) give the centro-affine action.
struct Affine3 {
  Eigen::Matrix3d A = Eigen::Matrix3d::Identity();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();

  static Affine3 identity() { return {}; }
  static Affine3 linear(const Eigen::Matrix3d& A) { return {A, Eigen::Vector3d::Zero()}; }
  static Affine3 translation(const Eigen::Vector3d& c) { return {Eigen::Matrix3d::Identity(), c}; }
  /// (x, y, z) -> (x + b1 z, y + b2 z, z).
  static Affine3 shear(double b1, double b2);

  Affine3 operator*(const Affine3& rhs) const { return {A * rhs.A, A * rhs.b + b}; }
  Affine3 inverse() const;
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return A * p + b; }
};

/// Planar affine map (X, Y) -> A (X, Y) + b.
struct Affine2 {
  Eigen::Matrix2d A = Eigen::Matrix2d::Identity();
  Eigen::Vector2d b = Eigen::Vector2d::Zero();

  Affine2 operator*(const Affine2& rhs) const { return {A * rhs.A, A * rhs.b + b}; }
  Affine2 inverse() const;
};

/// [A] in PGL(3), acting on the plane by linear fractional maps. Stored with
/// the largest-magnitude entry scaled to exactly 1 (sign included).
class Projective2 {
 public:
  Projective2() = default;
  explicit Projective2(const Eigen::Matrix3d& A);

  static Projective2 from_affine(const Affine2& g);
  /// Plane translation by (c1, c2) as a homogeneous matrix.
  static Projective2 translation(double c1, double c2);

  const Eigen::Matrix3d& matrix() const noexcept { return A_; }
  Projective2 operator*(const Projective2& rhs) const { return Projective2(A_ * rhs.A_); }
  Projective2 inverse() const { return Projective2(A_.inverse()); }
  bool approx_equal(const Projective2& other, double tol = 1e-12) const;

 private:
  Eigen::Matrix3d A_ = Eigen::Matrix3d::Identity();
};

SpaceCurveJet act_space(const Affine3& g, const SpaceCurveJet& c);
PlaneCurveJet act_plane_affine(const Affine2& g, const PlaneCurveJet& c);
/// Throws OnHyperplaneAtInfinity when the denominator a31 X + a32 Y + a33
/// vanishes at the base point.
PlaneCurveJet act_projective(const Projective2& g, const PlaneCurveJet& c);

/// g h g^{-1}.
Affine3 conjugate(const Affine3& g, const Affine3& h);

/// The planar affine map induced on the image of the standard parallel
/// projection by an element of the projectable subgroup H (x, y block only).
Affine2 planar_part(const Affine3& h);
/// True if h has the block form of the projectable subgroup H.
bool in_parallel_subgroup(const Affine3& h, double tol = 1e-14);

enum class GroupKind { GL3Plus, SL3, GL3, PGL3, A2, SA2, A3, H };

std::string_view to_string(GroupKind kind);
GroupKind group_kind_from_string(std::string_view name);

using GroupElement = std::variant<Affine3, Affine2, Projective2>;

/// Deterministic per seed. Entries uniform in [-1, 1], resampled until
/// |det| lies in [0.1, 10]; SL3/SA2 are rescaled to det = 1, GL3+ is sign-flipped
/// to det > 0, and H gets a positive planar block determinant. A2/A3/H
/// translations are uniform in [-1, 1].
GroupElement random_group_element(std::uint64_t seed, GroupKind kind);

/// Symbolic transforms of a curve's component expressions.
CurveSpec transform_curve(const CurveSpec& c, const Affine3& g);
CurveSpec transform_curve(const CurveSpec& c, const Affine2& g);
CurveSpec transform_curve(const CurveSpec& c, const Projective2& g);

/// JSON: {"A": [[row], ...], "b": [...]} (b omitted for Projective2).
std::string to_json(const Affine3& g);
std::string to_json(const Affine2& g);
std::string to_json(const Projective2& g);
Affine3 affine3_from_json(std::string_view text);
Affine2 affine2_from_json(std::string_view text);
Projective2 projective2_from_json(std::string_view text);

}  // namespace projinv
