#include <cmath>

#include "projinv/projection.hpp"
#include "projinv/signature.hpp"
#include "projinv/transform.hpp"
#include "support.hpp"

using namespace projinv;
using projinv::testing::throws_kind;

namespace {

const SampleWindow kWindow{0.2, 1.5, 200};
constexpr const char* kBulgedEllipse = "2*cos(t) + 0.3*cos(2*t), sin(t)";

CurveSpec helix_image() { return project_curve(ProjectionSpec::central(), builtin_curve("helix")); }

}  // namespace

TEST(Signature, TwistedCubicCollapses) {
  const Signature s = sample_signature(builtin_curve("twisted_cubic"), SignatureGroup::GL3Space, kWindow);
  EXPECT_EQ(s.points.size(), 200u);
  EXPECT_LT(s.diameter(), 1e-8);
  EXPECT_NEAR(s.points[0][0], 2.0 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(s.points[0][1], -4.0 / std::sqrt(3.0), 1e-9);
}

TEST(Signature, UnitCircleIsAPoint) {
  const Signature s = sample_signature(builtin_curve("unit_circle"), SignatureGroup::SA2Plane, kWindow);
  EXPECT_LT(s.diameter(), 1e-8);
  EXPECT_NEAR(s.points[0][0], 3.0, 1e-9);
  EXPECT_NEAR(s.points[0][1], 0.0, 1e-9);
}

TEST(Signature, HelixImageIsAnArc) {
  const Signature s = sample_signature(helix_image(), SignatureGroup::PGL3Plane, kWindow);
  EXPECT_GT(s.diameter(), 1e-3);
  EXPECT_GE(s.points.size(), 150u);
}

TEST(Signature, SelfDistanceIsZero) {
  const Signature s = sample_signature(helix_image(), SignatureGroup::PGL3Plane, kWindow);
  const SignatureComparison c = compare(s, s, 1e-4);
  EXPECT_EQ(c.distance, 0.0);
  EXPECT_TRUE(c.equivalent);
}

TEST(Signature, ProjectiveImagesAreEquivalent) {
  const Signature a = sample_signature(helix_image(), SignatureGroup::PGL3Plane, kWindow);
  for (std::uint64_t seed : {1u, 2u}) {
    const auto g = std::get<Projective2>(random_group_element(seed, GroupKind::PGL3));
    const Signature b = sample_signature(transform_curve(helix_image(), g), SignatureGroup::PGL3Plane, kWindow);
    const SignatureComparison c = compare(a, b, 1e-4);
    EXPECT_TRUE(c.equivalent) << "seed " << seed << " distance " << c.distance;
  }
}

TEST(Signature, DifferentImagesAreNot) {
  const Signature a = sample_signature(helix_image(), SignatureGroup::PGL3Plane, kWindow);
  for (const char* other : {"exp_blend", "exp_curve"}) {
    CurveSpec c = builtin_curve(other);
    if (c.dimension == 3) c = project_curve(ProjectionSpec::central(), c);
    const SignatureComparison r = compare(a, sample_signature(c, SignatureGroup::PGL3Plane, kWindow), 1e-4);
    EXPECT_FALSE(r.equivalent) << other;
    EXPECT_GT(r.distance, 1e-2) << other;
  }
}

TEST(Signature, SpaceCurveUnderGL3Plus) {
  const Signature a = sample_signature(builtin_curve("helix"), SignatureGroup::GL3Space, kWindow);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto g = std::get<Affine3>(random_group_element(seed, GroupKind::GL3Plus));
    const Signature b = sample_signature(transform_curve(builtin_curve("helix"), g), SignatureGroup::GL3Space, kWindow);
    EXPECT_TRUE(compare(a, b, 1e-4).equivalent) << seed;
  }
}

TEST(Signature, AffineAndEquiAffine) {
  const CurveSpec c = load_curve(kBulgedEllipse);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto a2 = std::get<Affine2>(random_group_element(seed, GroupKind::A2));
    if (a2.A.determinant() > 0) {
      EXPECT_TRUE(compare(sample_signature(c, SignatureGroup::A2Plane, kWindow),
                          sample_signature(transform_curve(c, a2), SignatureGroup::A2Plane, kWindow), 1e-4)
                      .equivalent)
          << seed;
    }
    const auto sa2 = std::get<Affine2>(random_group_element(seed, GroupKind::SA2));
    EXPECT_TRUE(compare(sample_signature(c, SignatureGroup::SA2Plane, kWindow),
                        sample_signature(transform_curve(c, sa2), SignatureGroup::SA2Plane, kWindow), 1e-4)
                    .equivalent)
        << seed;
  }
}

TEST(Signature, Mismatches) {
  const Signature a = sample_signature(builtin_curve("unit_circle"), SignatureGroup::SA2Plane, kWindow);
  const Signature b = sample_signature(builtin_curve("helix"), SignatureGroup::GL3Space, kWindow);
  EXPECT_TRUE(throws_kind(ErrorKind::GroupMismatch, [&] { (void)compare(a, b, 1e-4); }));
  EXPECT_TRUE(throws_kind(ErrorKind::DimensionMismatch,
                          [] { (void)sample_signature(builtin_curve("helix"), SignatureGroup::PGL3Plane, kWindow); }));
  EXPECT_TRUE(throws_kind(ErrorKind::InsufficientRegularSamples,
                          [] { (void)sample_signature(builtin_curve("parabola"), SignatureGroup::PGL3Plane, kWindow); }));
}

TEST(Signature, JsonAndCsvCarrySameValues) {
  const Signature s = sample_signature(helix_image(), SignatureGroup::PGL3Plane, SampleWindow{0.2, 1.5, 20});
  const Signature back = signature_from_json(to_json(s));
  ASSERT_EQ(back.points.size(), s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    EXPECT_EQ(back.points[i], s.points[i]);
    EXPECT_EQ(back.t[i], s.t[i]);
  }
  // CSV rows parsed with strtod give the identical doubles
  const std::string csv = to_csv(s);
  std::size_t pos = csv.find('\n') + 1;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    char* end = nullptr;
    const double t = std::strtod(csv.c_str() + pos, &end);
    const double a = std::strtod(end + 1, &end);
    const double b = std::strtod(end + 1, &end);
    EXPECT_EQ(t, s.t[i]);
    EXPECT_EQ(a, s.points[i][0]);
    EXPECT_EQ(b, s.points[i][1]);
    pos = static_cast<std::size_t>(end - csv.c_str()) + 1;
  }
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [] { (void)signature_from_json("{\"group\":\"PGL3_plane\"}"); }));
}

TEST(Signature, GroupNames) {
  EXPECT_EQ(signature_group_from_string("pgl3"), SignatureGroup::PGL3Plane);
  EXPECT_EQ(signature_group_from_string("GL3_space"), SignatureGroup::GL3Space);
  EXPECT_TRUE(throws_kind(ErrorKind::UnknownIdentifier, [] { (void)signature_group_from_string("so3"); }));
}
