// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "projinv/planeinv.hpp"
#include "projinv/projection.hpp"
#include "projinv/signature.hpp"
#include "projinv/spaceinv.hpp"
#include "projinv/transform.hpp"
#include "projinv/verify.hpp"

using namespace projinv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// The corpus named in the criteria: helix plus five seeded degree-5 curves.
std::vector<CurveSpec> eta_corpus() {
  std::vector<CurveSpec> c{builtin_curve("helix")};
  for (std::uint64_t s = 1; s <= 5; ++s) c.push_back(random_curve(s, 3, RandomCurveKind::Poly, 5));
  return c;
}

// Runs one identity over curves. A curve with no regular sample counts as a
// skip; every checked sample must pass and at least one must be checked.
Outcome identity_over(CheckId id, const std::vector<CurveSpec>& curves, double bound) {
  Outcome o;
  int pass = 0, fail = 0, skipped_curves = 0;
  double worst = 0.0;
  for (const auto& c : curves) {
    try {
      const IdentityReport r = check_identity(c, id);
      pass += r.count(PointStatus::Pass);
      fail += r.count(PointStatus::Fail);
      worst = std::max(worst, r.max_residual());
      if (!r.passed) o.pass = false;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AllPointsSingular) {
        o.pass = false;
        o.detail += std::string(" error on ") + c.label + ": " + e.what();
      }
      ++skipped_curves;
    }
  }
  if (pass == 0 || worst >= bound) o.pass = false;
  o.detail = std::to_string(pass) + " samples pass, " + std::to_string(fail) + " fail, " +
             std::to_string(skipped_curves) + " curves without regular samples, max residual " +
             fmt("%.2e", worst) + o.detail;
  return o;
}

Outcome c01_twisted_cubic() {
  Outcome o;
  double worst = 0.0;
  for (double t : SampleWindow{0.2, 1.5, 10}.points()) {
    const CentroInvariants c = centro_affine(eval_space_jet(builtin_curve("twisted_cubic"), t));
    worst = std::max({worst, std::abs(c.kappa_hat.value() + 4.0 / std::sqrt(3.0)),
                      std::abs(c.tau_hat.value() - 2.0 / std::sqrt(3.0)), std::abs(c.alpha_hat.value())});
  }
  o.pass = worst < 1e-9;
  o.detail = "max |error| " + fmt("%.2e", worst) + " over 10 samples";
  return o;
}

Outcome c08_classifier() {
  Outcome o;
  const Verdict tc = classify(builtin_curve("twisted_cubic"), 0.2, 1.5, 10).verdict;
  const Verdict planar = classify(parse_curve("t, t^2, 2*t + 3*t^2"), 0.2, 1.5, 10).verdict;
  const Verdict hx = classify(builtin_curve("helix"), 0.2, 1.5, 10).verdict;
  const Outcome pull = identity_over(CheckId::ClassifierPullbacks, builtin_space_corpus(), 1e-8);
  o.pass = tc == Verdict::ConicImage && planar == Verdict::TotallyDegenerate && hx == Verdict::Regular && pull.pass;
  o.detail = to_string(tc) + ", " + to_string(planar) + ", " + to_string(hx) + "; pullbacks: " + pull.detail;
  return o;
}

Outcome c10_fuzz() {
  struct Case {
    const char* curve;
    FuzzQuantity q;
    GroupKind g;
    double tol;
  };
  const Case cases[] = {
      {"unit_circle", FuzzQuantity::Mu, GroupKind::SA2, 1e-8},
      {"2*cos(t) + 0.3*cos(2*t), sin(t)", FuzzQuantity::Nu, GroupKind::A2, 1e-7},
      {"exp_curve", FuzzQuantity::Eta, GroupKind::PGL3, 1e-6},
      {"cubic", FuzzQuantity::Eta, GroupKind::PGL3, 1e-6},
      {"helix", FuzzQuantity::Kappa, GroupKind::SL3, 1e-8},
      {"helix", FuzzQuantity::Tau, GroupKind::SL3, 1e-8},
      {"helix", FuzzQuantity::KappaHat, GroupKind::GL3Plus, 1e-7},
      {"helix", FuzzQuantity::TauHat, GroupKind::GL3Plus, 1e-7},
      {"helix", FuzzQuantity::EtaHat, GroupKind::GL3Plus, 1e-7},
      {"helix", FuzzQuantity::ZetaHat1, GroupKind::GL3Plus, 1e-7},
      {"helix", FuzzQuantity::NuHat, GroupKind::H, 1e-7},
      {"helix", FuzzQuantity::IotaHatZ4, GroupKind::H, 1e-7},
      {"helix", FuzzQuantity::Kappa, GroupKind::GL3, 1e-8},
      {"helix", FuzzQuantity::Tau, GroupKind::GL3, 1e-8},
  };
  Outcome o;
  int failed = 0;
  std::string worst;
  for (const auto& c : cases) {
    const FuzzReport r = fuzz_invariance(load_curve(c.curve), c.q, c.g, 100, 42, c.tol);
    if (!r.passed()) {
      ++failed;
      o.detail += " " + r.quantity + "/" + std::string(to_string(c.g)) + " failed";
    }
    if (r.max_deviation / c.tol > 0.1) {
      worst += " " + r.quantity + "/" + std::string(to_string(c.g)) + " " + fmt("%.1e", r.max_deviation);
    }
  }
  o.pass = failed == 0;
  o.detail = std::to_string(std::size(cases) - failed) + "/" + std::to_string(std::size(cases)) +
             " quantity-group pairs, 100 trials each" + (worst.empty() ? "" : "; largest:" + worst) + o.detail;
  return o;
}

Outcome c11_equivariance() {
  Outcome o;
  std::string parts;
  for (CheckId id : {CheckId::EquivarianceCentral, CheckId::EquivarianceParallel}) {
    const IdentityReport r = check_identity(builtin_curve("helix"), id);
    const int trials = r.count(PointStatus::Pass) * VerifyOptions{}.trials_per_point;
    if (!r.passed || trials < 50 || r.max_residual() >= 1e-9) o.pass = false;
    parts += std::string(to_string(id)) + " " + std::to_string(trials) + " trials max " +
             fmt("%.1e", r.max_residual()) + "; ";
  }
  o.detail = parts;
  return o;
}

Outcome c12_oracle() {
  Outcome o;
  int total = 0, bad = 0;
  for (const auto& c : builtin_space_corpus()) {
    for (double t : SampleWindow{}.points()) {
      const SpaceCurveJet w = eval_space_jet(c, t);
      const Jet* comps[] = {&w.x, &w.y, &w.z};
      for (int i = 0; i < 3; ++i) {
        for (int k = 0; k <= 7; ++k) {
          const FiniteDifference d = finite_difference_oracle(c, i, t, k, default_fd_step(k, t));
          ++total;
          if (!(std::abs(d.value - (*comps[i])[k]) <= d.error_bound)) ++bad;
        }
      }
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(total - bad) + "/" + std::to_string(total) + " derivatives within the oracle bound";
  return o;
}

Outcome c13_plane() {
  Outcome o;
  const PlaneGraphJet circle = to_graph(eval_plane_jet(builtin_curve("lower_circle"), 0.0));
  const double mu = equi_affine(circle).mu.value();
  const double A = invariant_A(circle).value();
  const double parabola = equi_affine(to_graph(eval_plane_jet(builtin_curve("parabola"), 0.5))).mu.value();
  bool inflection = true;
  for (double t : SampleWindow{}.points()) {
    const InvariantJet m = equi_affine(to_graph(eval_plane_jet(parse_curve("t, 1 + 2*t"), t))).mu;
    inflection = inflection && !m.valid() && m.failure == ErrorKind::InflectionPoint;
  }
  o.pass = std::abs(mu - 3.0) < 1e-10 && std::abs(A) < 1e-10 && std::abs(parabola) < 1e-12 && inflection;
  o.detail = "circle mu " + fmt("%.15g", mu) + " A " + fmt("%.1e", A) + ", parabola mu " + fmt("%.1e", parabola) +
             ", line " + (inflection ? "InflectionPoint" : "not flagged");
  return o;
}

Outcome c14_signature() {
  Outcome o;
  const SampleWindow w{0.2, 1.5, 200};
  const CurveSpec image = project_curve(ProjectionSpec::central(), builtin_curve("helix"));
  const auto g = std::get<Projective2>(random_group_element(1, GroupKind::PGL3));
  const SignatureComparison c = compare(sample_signature(image, SignatureGroup::PGL3Plane, w),
                                        sample_signature(transform_curve(image, g), SignatureGroup::PGL3Plane, w),
                                        1e-4);
  const double diam = sample_signature(builtin_curve("twisted_cubic"), SignatureGroup::GL3Space, w).diameter();
  o.pass = c.equivalent && diam < 1e-8;
  o.detail = "helix image vs PGL3 image distance " + fmt("%.1e", c.distance) + ", twisted cubic diameter " +
             fmt("%.1e", diam);
  return o;
}

}  // namespace

int main() {
  const std::vector<CurveSpec> corpus = eta_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"twisted cubic constants", c01_twisted_cubic},
      {"eta pullback", [&] { return identity_over(CheckId::EtaPullback, corpus, 1e-7); }},
      {"eta routes", [&] { return identity_over(CheckId::EtaRoutes, corpus, 1e-7); }},
      {"frenet", [] { return identity_over(CheckId::Frenet, builtin_space_corpus(), 1e-8); }},
      {"beta dual", [] { return identity_over(CheckId::BetaDual, builtin_space_corpus(), 1e-9); }},
      {"zeta relation", [&] { return identity_over(CheckId::ZetaRelation, corpus, 1e-7); }},
      {"kappa recovery", [&] { return identity_over(CheckId::KappaRecovery, corpus, 1e-7); }},
      {"classifier", c08_classifier},
      {"parallel pullback", [] { return identity_over(CheckId::NuParallelPullback, builtin_space_corpus(), 1e-7); }},
      {"invariance fuzz", c10_fuzz},
      {"equivariance diagrams", c11_equivariance},
      {"jet oracle", c12_oracle},
      {"plane constants", c13_plane},
      {"signatures", c14_signature},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %-22s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
