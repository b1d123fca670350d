#pragma once

// Differential invariant signatures: the curve traced in invariant space by a
// generating invariant and its invariant derivative.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "projinv/curve.hpp"
#include "projinv/taylor.hpp"
#include "projinv/verify.hpp"

namespace projinv {

/// PGL3_plane: (eta, eta_xi). GL3_space: (tau_hat, kappa_hat).
/// A2_plane: (nu, nu_rho). SA2_plane: (mu, mu_chi).
enum class SignatureGroup { PGL3Plane, GL3Space, A2Plane, SA2Plane };

std::string_view to_string(SignatureGroup g);
/// Accepts the canonical names and the short forms pgl3, gl3, a2, sa2.
SignatureGroup signature_group_from_string(std::string_view name);
int curve_dimension(SignatureGroup g);
std::array<std::string_view, 2> invariant_names(SignatureGroup g);

struct DroppedSample {
  double t = 0.0;
  std::string reason;
};

struct Signature {
  SignatureGroup group = SignatureGroup::GL3Space;
  std::string label;
  SampleWindow window;
  std::vector<double> t;
  std::vector<std::array<double, 2>> points;
  std::vector<DroppedSample> dropped;

  double diameter() const;
};

/// Samples at window.points(); samples failing a guard are dropped with the
/// reason. Throws DimensionMismatch, or InsufficientRegularSamples when fewer
/// than two samples survive.
Signature sample_signature(const CurveSpec& curve, SignatureGroup group,
                           const SampleWindow& window, int order = kDefaultJetOrder);

/// Signatures with a diameter below this are treated as single points.
inline constexpr double kDegenerateDiameter = 1e-8;

struct SignatureComparison {
  double distance = 0.0;
  bool equivalent = false;
  bool degenerate = false;
};

/// Symmetric Hausdorff distance divided by the larger diameter, or the raw
/// distance when both signatures are degenerate. Throws GroupMismatch.
SignatureComparison compare(const Signature& a, const Signature& b, double tol);

/// Columns t, inv1, inv2 with 17 significant digits.
std::string to_csv(const Signature& s);
std::string to_json(const Signature& s);
Signature signature_from_json(std::string_view text);

}  // namespace projinv
