#pragma once

// Identity checks over curve samples, invariance fuzzing and a
// finite-difference oracle for jets.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "projinv/curve.hpp"
#include "projinv/error.hpp"
#include "projinv/taylor.hpp"
#include "projinv/transform.hpp"

namespace projinv {

enum class CheckId {
  EtaPullback,
  EtaRoutes,
  Frenet,
  BetaDual,
  ZetaRelation,
  KappaRecovery,
  XiDensity,
  NuParallelPullback,
  ClassifierPullbacks,
  RecurrenceDual,
  EquivarianceCentral,
  EquivarianceParallel,
};

inline constexpr std::array<CheckId, 12> kAllChecks{
    CheckId::EtaPullback,         CheckId::EtaRoutes,         CheckId::Frenet,
    CheckId::BetaDual,            CheckId::ZetaRelation,      CheckId::KappaRecovery,
    CheckId::XiDensity,           CheckId::NuParallelPullback, CheckId::ClassifierPullbacks,
    CheckId::RecurrenceDual,      CheckId::EquivarianceCentral, CheckId::EquivarianceParallel};

std::string_view to_string(CheckId id);
CheckId check_from_string(std::string_view name);
double default_tolerance(CheckId id);

/// n evenly spaced samples of [t0, t1], endpoints included.
struct SampleWindow {
  double t0 = 0.2;
  double t1 = 1.5;
  int n = 10;

  std::vector<double> points() const;
  /// "a:b:n".
  static SampleWindow parse(std::string_view text);
};

struct VerifyOptions {
  SampleWindow window;
  std::optional<double> tolerance;
  int order = kDefaultJetOrder;
  std::uint64_t seed = 42;
  /// Random group elements drawn per sample for the equivariance checks.
  int trials_per_point = 5;
  /// Corrupts the evaluated identity (negative control for the harness).
  bool inject_fault = false;
};

enum class PointStatus { Pass, Fail, Skip };
std::string_view to_string(PointStatus s);

struct PointResult {
  double t = 0.0;
  double residual = 0.0;
  PointStatus status = PointStatus::Skip;
  std::string reason;
};

struct IdentityReport {
  CheckId check = CheckId::Frenet;
  std::string curve;
  double tolerance = 0.0;
  std::vector<PointResult> points;
  bool passed = false;

  double max_residual() const;
  int count(PointStatus s) const;
};

/// Evaluates one identity at every window sample. Samples failing a guard are
/// recorded as Skip with the guard's reason. Throws AllPointsSingular when no
/// sample survives, DimensionMismatch for plane curves.
///
/// Checks made of several sub-identities with different bounds report the
/// largest sub-residual rescaled to the check tolerance.
IdentityReport check_identity(const CurveSpec& curve, CheckId check,
                              const VerifyOptions& options = {});

/// {check, curve, tolerance, points:[{t, residual, status, reason?}], verdict}.
std::string to_json(const IdentityReport& r);

/// Quantities that can be fuzzed, with their group characters.
enum class FuzzQuantity {
  Mu, Nu, Eta,
  Kappa, Tau, KappaHat, TauHat, AlphaHat, BetaHat, EtaHat, ZetaHat1, ZetaTilde,
  NuHat, IotaHatZ4,
};
std::string_view to_string(FuzzQuantity q);
FuzzQuantity fuzz_quantity_from_string(std::string_view name);
bool is_plane_quantity(FuzzQuantity q);

/// Expected factor q(g.c) / q(c) for a group element g. Throws GroupMismatch
/// when q has no transformation law for the group.
double character(FuzzQuantity q, const GroupElement& g);

struct FuzzFailure {
  std::uint64_t seed = 0;
  double t = 0.0;
  std::string quantity;
  double deviation = 0.0;
};

struct FuzzReport {
  GroupKind group = GroupKind::GL3;
  std::string quantity;
  int trials = 0;
  int skipped = 0;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  std::vector<FuzzFailure> failures;

  bool passed() const { return failures.empty() && skipped < trials; }
};

/// For each trial, draws g with seed mix(master_seed, trial), acts on the
/// curve jets and compares q(g.c) with character(q, g) * q(c) at every window
/// sample. Deviation is |q' - chi q| / (1 + max(|q'|, |chi q|)).
FuzzReport fuzz_invariance(const CurveSpec& curve, FuzzQuantity quantity, GroupKind group,
                           int trials, std::uint64_t master_seed, double tolerance,
                           const SampleWindow& window = {}, int order = kDefaultJetOrder);

std::string to_json(const FuzzReport& r);

struct FiniteDifference {
  double value = 0.0;
  /// Truncation estimate |D_h - D_{h/2}| plus a roundoff estimate.
  double error_bound = 0.0;
};

/// Central difference of order k at t with steps h and h/2, combined by
/// Richardson extrapolation. k must lie in [0, 7].
FiniteDifference finite_difference_oracle(const std::function<double(double)>& f, double t,
                                          int k, double h);
FiniteDifference finite_difference_oracle(const CurveSpec& curve, int component, double t,
                                          int k, double h);
/// Step used when none is given: grows with k to balance roundoff.
double default_fd_step(int k, double t);

/// helix, exp_blend and five seeded degree-5 random polynomial space curves.
std::vector<CurveSpec> builtin_space_corpus();

}  // namespace projinv
