#include <cmath>

#include "projinv/transform.hpp"
#include "support.hpp"

using namespace projinv;
using projinv::testing::throws_kind;

TEST(Transform, DiagonalSubgroupSlidesTwistedCubic) {
  // diag(l, l^2, l^3) w(t) = w(l t)
  const double l = 1.7;
  Eigen::Matrix3d A = Eigen::Vector3d(l, l * l, l * l * l).asDiagonal();
  const CurveSpec c = builtin_curve("twisted_cubic");
  const CurveSpec moved = transform_curve(c, Affine3::linear(A));
  for (double t : {0.2, 0.5, 1.1}) {
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(eval_component(moved, i, t), eval_component(c, i, l * t), 1e-12);
    }
  }
}

TEST(Transform, SymbolicAndJetActionsAgree) {
  const CurveSpec c = builtin_curve("exp_blend");
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = std::get<Affine3>(random_group_element(seed, GroupKind::A3));
    const SpaceCurveJet a = act_space(g, eval_space_jet(c, 0.6));
    const SpaceCurveJet b = eval_space_jet(transform_curve(c, g), 0.6);
    for (int k = 0; k <= 10; ++k) {
      EXPECT_NEAR(a.x[k], b.x[k], 1e-11 * (1 + std::abs(a.x[k])));
      EXPECT_NEAR(a.z[k], b.z[k], 1e-11 * (1 + std::abs(a.z[k])));
    }
  }
}

TEST(Transform, ProjectiveActionComposes) {
  const CurveSpec c = builtin_curve("exp_curve");
  const PlaneCurveJet j = eval_plane_jet(c, 0.3);
  const auto g = std::get<Projective2>(random_group_element(3, GroupKind::PGL3));
  const auto h = std::get<Projective2>(random_group_element(4, GroupKind::PGL3));
  const PlaneCurveJet one = act_projective(g * h, j);
  const PlaneCurveJet two = act_projective(g, act_projective(h, j));
  for (int k = 0; k <= 6; ++k) {
    EXPECT_NEAR(one.X[k], two.X[k], 1e-8 * (1 + std::abs(one.X[k])));
    EXPECT_NEAR(one.Y[k], two.Y[k], 1e-8 * (1 + std::abs(one.Y[k])));
  }
  const PlaneCurveJet back = act_projective(g.inverse(), act_projective(g, j));
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(back.Y[k], j.Y[k], 1e-8 * (1 + std::abs(j.Y[k])));
}

TEST(Transform, RandomElementsRespectTheirGroup) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sl = std::get<Affine3>(random_group_element(seed, GroupKind::SL3));
    EXPECT_NEAR(sl.A.determinant(), 1.0, 1e-12);
    const auto gp = std::get<Affine3>(random_group_element(seed, GroupKind::GL3Plus));
    EXPECT_GT(gp.A.determinant(), 0.0);
    EXPECT_TRUE(gp.b.isZero());
    const auto sa = std::get<Affine2>(random_group_element(seed, GroupKind::SA2));
    EXPECT_NEAR(sa.A.determinant(), 1.0, 1e-12);
    const auto h = std::get<Affine3>(random_group_element(seed, GroupKind::H));
    EXPECT_TRUE(in_parallel_subgroup(h));
    EXPECT_GT(planar_part(h).A.determinant(), 0.0);
    const auto p = std::get<Projective2>(random_group_element(seed, GroupKind::PGL3));
    EXPECT_DOUBLE_EQ(p.matrix().cwiseAbs().maxCoeff(), 1.0);
  }
}

TEST(Transform, SeedsAreReproducible) {
  const auto a = std::get<Affine3>(random_group_element(99, GroupKind::GL3));
  const auto b = std::get<Affine3>(random_group_element(99, GroupKind::GL3));
  EXPECT_TRUE(a.A == b.A);
}

TEST(Transform, InverseAndConjugate) {
  const auto g = std::get<Affine3>(random_group_element(5, GroupKind::A3));
  const Affine3 e = g * g.inverse();
  EXPECT_TRUE(e.A.isIdentity(1e-12));
  EXPECT_LT(e.b.norm(), 1e-12);
  const Affine3 s = Affine3::shear(0.3, -0.2);
  const Affine3 c = conjugate(s, Affine3::shear(0.1, 0.1));
  EXPECT_TRUE(c.A.isApprox(Affine3::shear(0.1, 0.1).A, 1e-14));
}

TEST(Transform, JsonRoundTrip) {
  const auto g = std::get<Affine3>(random_group_element(8, GroupKind::A3));
  const Affine3 g2 = affine3_from_json(to_json(g));
  EXPECT_TRUE(g.A == g2.A);
  EXPECT_TRUE(g.b == g2.b);
  const auto p = std::get<Projective2>(random_group_element(8, GroupKind::PGL3));
  EXPECT_TRUE(projective2_from_json(to_json(p)).approx_equal(p, 0.0));
  const auto q = std::get<Affine2>(random_group_element(8, GroupKind::A2));
  EXPECT_TRUE(affine2_from_json(to_json(q)).A == q.A);
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [] { (void)affine3_from_json("{\"A\":[1]}"); }));
}

TEST(Transform, GroupNames) {
  EXPECT_EQ(group_kind_from_string("GL3+"), GroupKind::GL3Plus);
  EXPECT_EQ(group_kind_from_string("H"), GroupKind::H);
  EXPECT_TRUE(throws_kind(ErrorKind::UnknownIdentifier, [] { (void)group_kind_from_string("SO3"); }));
}

TEST(Transform, LineAtInfinity) {
  Eigen::Matrix3d A;
  A << 0, 0, 1, 0, 1, 0, 1, 0, 0;  // a33 = 0, denominator X vanishes at the origin
  const PlaneCurveJet j = eval_plane_jet(builtin_curve("parabola"), 0.0);
  EXPECT_TRUE(throws_kind(ErrorKind::OnHyperplaneAtInfinity,
                          [&] { (void)act_projective(Projective2(A), j); }));
}
