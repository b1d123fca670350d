#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "projinv/verify.hpp"
#include "support.hpp"

using namespace projinv;
using projinv::testing::throws_kind;

namespace {

// (check, curve) pairs where no sample is regular
const std::set<std::pair<std::string, std::string>> kExpectedSingular{
    {"ETA_PULLBACK", "twisted_cubic"},    {"ETA_ROUTES", "twisted_cubic"},
    {"ZETA_RELATION", "twisted_cubic"},   {"KAPPA_RECOVERY", "twisted_cubic"},
    {"XI_DENSITY", "twisted_cubic"},      {"NU_PARALLEL_PULLBACK", "poly-3d-seed5"},
    {"RECURRENCE_DUAL", "exp_blend"},     {"RECURRENCE_DUAL", "poly-3d-seed3"},
    {"RECURRENCE_DUAL", "poly-3d-seed5"},
};

std::vector<CurveSpec> corpus_with_twisted_cubic() {
  auto c = builtin_space_corpus();
  c.push_back(builtin_curve("twisted_cubic"));
  return c;
}

}  // namespace

TEST(Window, Parse) {
  const SampleWindow w = SampleWindow::parse("-0.5:0.5:11");
  EXPECT_EQ(w.n, 11);
  const auto p = w.points();
  EXPECT_DOUBLE_EQ(p.front(), -0.5);
  EXPECT_DOUBLE_EQ(p.back(), 0.5);
  EXPECT_NEAR(p[5], 0.0, 1e-16);
  for (const char* bad : {"1:2", "1:2:x", "a:1:3", "1:2:0", "2:1:5:"}) {
    EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [&] { (void)SampleWindow::parse(bad); })) << bad;
  }
}

TEST(Checks, Names) {
  for (CheckId id : kAllChecks) EXPECT_EQ(check_from_string(to_string(id)), id);
  EXPECT_TRUE(throws_kind(ErrorKind::UnknownIdentifier, [] { (void)check_from_string("FRENETT"); }));
}

TEST(Checks, HelixEtaPullback) {
  const IdentityReport r = check_identity(builtin_curve("helix"), CheckId::EtaPullback);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.count(PointStatus::Pass), 10);
  EXPECT_LT(r.max_residual(), 1e-7);
}

TEST(Checks, TwistedCubicImageIsParabola) {
  EXPECT_TRUE(throws_kind(ErrorKind::AllPointsSingular,
                          [] { (void)check_identity(builtin_curve("twisted_cubic"), CheckId::EtaPullback); }));
}

TEST(Checks, PlaneCurvesRejected) {
  EXPECT_TRUE(throws_kind(ErrorKind::DimensionMismatch,
                          [] { (void)check_identity(builtin_curve("parabola"), CheckId::Frenet); }));
}

// Every check on every corpus curve either passes or has no regular sample.
TEST(Checks, WholeCorpus) {
  for (CheckId id : kAllChecks) {
    for (const CurveSpec& c : corpus_with_twisted_cubic()) {
      const std::pair<std::string, std::string> key{std::string(to_string(id)), c.label};
      try {
        const IdentityReport r = check_identity(c, id);
        EXPECT_TRUE(r.passed) << to_json(r);
        EXPECT_LE(r.max_residual(), r.tolerance);
        EXPECT_FALSE(kExpectedSingular.count(key)) << key.first << " " << key.second << " now has regular samples";
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::AllPointsSingular) << e.what();
        EXPECT_TRUE(kExpectedSingular.count(key)) << key.first << " " << key.second << ": " << e.what();
      }
    }
  }
}

TEST(Checks, InjectedFaultIsCaught) {
  VerifyOptions o;
  o.inject_fault = true;
  for (CheckId id : {CheckId::Frenet, CheckId::EtaPullback, CheckId::BetaDual}) {
    const IdentityReport r = check_identity(builtin_curve("helix"), id, o);
    EXPECT_FALSE(r.passed) << to_string(id);
    EXPECT_GT(r.count(PointStatus::Fail), 0);
  }
}

TEST(Checks, EquivarianceTrialCounts) {
  // 10 samples x 5 seeded elements = 50 trials per diagram
  for (CheckId id : {CheckId::EquivarianceCentral, CheckId::EquivarianceParallel}) {
    const IdentityReport r = check_identity(builtin_curve("helix"), id);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.count(PointStatus::Pass), 10) << to_json(r);
    EXPECT_LT(r.max_residual(), 1e-9);
  }
}

TEST(Checks, ReportJson) {
  const IdentityReport r = check_identity(builtin_curve("helix"), CheckId::Frenet);
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j.at("check"), "FRENET");
  EXPECT_EQ(j.at("curve"), "helix");
  EXPECT_EQ(j.at("points").size(), 10u);
  EXPECT_EQ(j.at("verdict"), "PASS");
}

TEST(Checks, Deterministic) {
  VerifyOptions o;
  o.seed = 7;
  const auto a = to_json(check_identity(random_curve(2, 3, RandomCurveKind::Poly, 5), CheckId::EquivarianceParallel, o));
  const auto b = to_json(check_identity(random_curve(2, 3, RandomCurveKind::Poly, 5), CheckId::EquivarianceParallel, o));
  EXPECT_EQ(a, b);
}

TEST(Fuzz, ReportIsReproducible) {
  const auto a = to_json(fuzz_invariance(builtin_curve("helix"), FuzzQuantity::TauHat, GroupKind::GL3Plus, 10, 3, 1e-7));
  const auto b = to_json(fuzz_invariance(builtin_curve("helix"), FuzzQuantity::TauHat, GroupKind::GL3Plus, 10, 3, 1e-7));
  EXPECT_EQ(a, b);
}

TEST(Fuzz, TwistedCubicKappaHat) {
  EXPECT_TRUE(fuzz_invariance(builtin_curve("twisted_cubic"), FuzzQuantity::KappaHat, GroupKind::GL3Plus, 100, 42, 1e-7).passed());
}

TEST(FiniteDifference, KnownFunction) {
  auto f = [](double t) { return std::exp(2.0 * t); };
  for (int k = 0; k <= 7; ++k) {
    const FiniteDifference d = finite_difference_oracle(f, 0.3, k, default_fd_step(k, 0.3));
    const double exact = std::pow(2.0, k) * std::exp(0.6);
    EXPECT_LE(std::abs(d.value - exact), d.error_bound) << k;
    EXPECT_LT(d.error_bound, 1e-3 * exact) << k;
  }
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [&] { (void)finite_difference_oracle(f, 0.0, 8, 0.1); }));
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidArgument, [&] { (void)finite_difference_oracle(f, 0.0, 2, 0.0); }));
}

// Taylor jets up to order 7 against the oracle, all builtin curves.
TEST(FiniteDifference, JetsAgreeOnCorpus) {
  std::vector<CurveSpec> curves = builtin_space_corpus();
  for (const char* n : {"exp_curve", "cubic", "ellipse", "unit_circle"}) curves.push_back(builtin_curve(n));
  for (const CurveSpec& c : curves) {
    // the ellipse stencil must stay inside |t| < 2
    const SampleWindow w = c.label == "ellipse" ? SampleWindow{0.2, 1.0, 10} : SampleWindow{};
    for (double t : w.points()) {
      std::vector<Jet> comps;
      if (c.dimension == 3) {
        const SpaceCurveJet w = eval_space_jet(c, t);
        comps = {w.x, w.y, w.z};
      } else {
        const PlaneCurveJet p = eval_plane_jet(c, t);
        comps = {p.X, p.Y};
      }
      for (int i = 0; i < c.dimension; ++i) {
        for (int k = 0; k <= 7; ++k) {
          const FiniteDifference d = finite_difference_oracle(c, i, t, k, default_fd_step(k, t));
          EXPECT_LE(std::abs(d.value - comps[i][k]), d.error_bound)
              << c.label << " t=" << t << " component " << i << " k=" << k;
        }
      }
    }
  }
}
