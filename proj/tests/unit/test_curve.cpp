#include <cmath>

#include "projinv/curve.hpp"
#include "support.hpp"

using namespace projinv;
using projinv::testing::throws_kind;

TEST(Parse, TwistedCubic) {
  const CurveSpec c = parse_curve("t, t^2, t^3");
  EXPECT_EQ(c.dimension, 3);
  ASSERT_EQ(c.components.size(), 3u);
  EXPECT_EQ(to_text(c), "t, t^2, t^3");
}

TEST(Parse, HelixEcho) {
  EXPECT_EQ(to_text(parse_curve("cos(t), sin(t), t")), "cos(t), sin(t), t");
}

TEST(Parse, SyntaxErrorReportsColumn) {
  try {
    (void)parse_curve("t, t*");
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
    EXPECT_NE(std::string(e.what()).find("offset 6"), std::string::npos) << e.what();
  }
}

TEST(Parse, RejectsUnknownNamesAndBadArity) {
  EXPECT_TRUE(throws_kind(ErrorKind::UnknownIdentifier, [] { (void)parse_curve("t, foo(t)"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::UnknownIdentifier, [] { (void)parse_curve("t, x"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::DimensionMismatch, [] { (void)parse_curve("t"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::DimensionMismatch, [] { (void)parse_curve("t,t,t,t"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::SyntaxError, [] { (void)parse_curve("t, (t"); }));
}

TEST(Parse, Precedence) {
  EXPECT_DOUBLE_EQ(evaluate(*parse_expression("2^3^2"), 0.0), 512.0);  // right associative
  EXPECT_DOUBLE_EQ(evaluate(*parse_expression("-t^2"), 2.0), -4.0);
  EXPECT_DOUBLE_EQ(evaluate(*parse_expression("-2*t"), 3.0), -6.0);
  EXPECT_DOUBLE_EQ(evaluate(*parse_expression("1 - t - t"), 1.0), -1.0);
  EXPECT_DOUBLE_EQ(evaluate(*parse_expression("8 / t / 2"), 2.0), 2.0);
  EXPECT_NEAR(evaluate(*parse_expression("pi + e"), 0.0), M_PI + M_E, 1e-15);
}

TEST(Parse, PrintParseIsIdempotent) {
  const char* sources[] = {"t, -(t^2)^3, 1/(1+t)", "(t - 1)*(t + 1), exp(-t/2), 2^-t",
                           "sin(t)^2, -t - -t, t^(1/3)", "atan(t)*tan(t), log(1 + t^2), sqrt(2)*t"};
  for (const char* s : sources) {
    const CurveSpec a = parse_curve(s);
    const CurveSpec b = parse_curve(to_text(a));
    ASSERT_EQ(a.components.size(), b.components.size());
    for (std::size_t i = 0; i < a.components.size(); ++i) {
      EXPECT_TRUE(same_tree(*a.components[i], *b.components[i])) << s;
    }
    EXPECT_EQ(to_text(a), to_text(b));
  }
}

TEST(Parse, RandomCurvesSurvivePrintParse) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CurveSpec a = random_curve(seed, 3, RandomCurveKind::TrigPoly, 4);
    const CurveSpec b = parse_curve(to_text(a));
    // negative literals come back as negations, so compare text and values rather than trees
    EXPECT_EQ(to_text(b), to_text(a));
    for (double t : {-1.3, 0.0, 0.7, 2.9}) {
      for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(evaluate(*b.components[i], t), evaluate(*a.components[i], t)) << seed;
    }
  }
}

TEST(Eval, TwistedCubicJets) {
  const SpaceCurveJet w = eval_space_jet(parse_curve("t, t^2, t^3"), 1.0, 3);
  const double x[] = {1, 1, 0, 0}, y[] = {1, 2, 2, 0}, z[] = {1, 3, 6, 6};
  for (int k = 0; k <= 3; ++k) {
    EXPECT_DOUBLE_EQ(w.x[k], x[k]);
    EXPECT_DOUBLE_EQ(w.y[k], y[k]);
    EXPECT_DOUBLE_EQ(w.z[k], z[k]);
  }
}

TEST(Eval, HelixJets) {
  const SpaceCurveJet w = eval_space_jet(builtin_curve("helix"), 0.0, 2);
  EXPECT_DOUBLE_EQ(w.x[0], 1.0);
  EXPECT_DOUBLE_EQ(w.x[1], 0.0);
  EXPECT_DOUBLE_EQ(w.x[2], -1.0);
  EXPECT_DOUBLE_EQ(w.y[1], 1.0);
  EXPECT_DOUBLE_EQ(w.z[1], 1.0);
  EXPECT_DOUBLE_EQ(w.z[2], 0.0);
}

TEST(Eval, DomainErrors) {
  const CurveSpec c = parse_curve("t, log(t)");
  EXPECT_TRUE(throws_kind(ErrorKind::DomainError, [&] { (void)eval_plane_jet(c, 0.0); }));
  EXPECT_TRUE(throws_kind(ErrorKind::DimensionMismatch, [&] { (void)eval_space_jet(c, 1.0); }));
}

TEST(RandomCurve, Deterministic) {
  const CurveSpec a = random_curve(7, 3, RandomCurveKind::Poly, 5);
  const CurveSpec b = random_curve(7, 3, RandomCurveKind::Poly, 5);
  const CurveSpec c = random_curve(8, 3, RandomCurveKind::Poly, 5);
  EXPECT_EQ(to_text(a), to_text(b));
  EXPECT_NE(to_text(a), to_text(c));
}

TEST(RandomCurve, CenterStaysInFront) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (auto kind : {RandomCurveKind::Poly, RandomCurveKind::TrigPoly}) {
      EXPECT_GE(std::abs(eval_component(random_curve(seed, 3, kind, 5), 2, 0.0)), 0.5);
    }
  }
}

TEST(CurveJson, RoundTrip) {
  for (const auto& name : builtin_curve_names()) {
    const CurveSpec a = builtin_curve(name);
    const CurveSpec b = curve_from_json(curve_to_json(a));
    EXPECT_EQ(b.label, a.label);
    EXPECT_EQ(b.dimension, a.dimension);
    EXPECT_EQ(to_text(b), to_text(a));
  }
  EXPECT_TRUE(throws_kind(ErrorKind::SyntaxError, [] { (void)curve_from_json("{\"dim\":"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::SyntaxError, [] { (void)curve_from_json("{\"dim\":2}"); }));
  EXPECT_TRUE(throws_kind(ErrorKind::DimensionMismatch,
                          [] { (void)curve_from_json("{\"dim\":3,\"components\":[\"t\",\"t^2\"]}"); }));
}

TEST(LoadCurve, NamesAndText) {
  EXPECT_EQ(load_curve("helix").label, "helix");
  EXPECT_EQ(load_curve("t, t^2").dimension, 2);
  EXPECT_TRUE(throws_kind(ErrorKind::UnknownIdentifier, [] { (void)load_curve("no_such_curve"); }));
}
