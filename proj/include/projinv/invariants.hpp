#pragma once

// Per-sample invariant tables for each group, shared by the command line
// tool and the Python module.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "projinv/curve.hpp"
#include "projinv/invariant_jet.hpp"
#include "projinv/verify.hpp"

namespace projinv {

/// Plane groups (SA2, A2, PGL3) act on plane curves, the rest on space curves.
enum class InvariantGroup { SA2, A2, PGL3, SL3, GL3, H };

/// Case-insensitive: sa2, a2, pgl3, sl3, gl3, h.
InvariantGroup invariant_group_from_string(std::string_view s);
std::string to_string(InvariantGroup g);
int curve_dimension(InvariantGroup g);
std::vector<std::string> invariant_columns(InvariantGroup g);

/// One jet per column at t. Plane groups use the aligned chart, H the
/// z-rotated space chart. Throws if the chart itself cannot be built.
std::vector<InvariantJet> evaluate_group(InvariantGroup g, const CurveSpec& curve, double t,
                                         int order = kDefaultJetOrder);

struct InvariantRecord {
  std::string name;
  double t = 0.0;
  std::optional<double> value, d1, d2;  // d1, d2 are derivatives in t
  std::string reason;                   // why value is missing

  bool valid() const { return value.has_value(); }
};

/// Column-major per sample: every column at t0, then every column at t1, ...
std::vector<InvariantRecord> invariant_records(InvariantGroup g, const CurveSpec& curve,
                                               const SampleWindow& window,
                                               int order = kDefaultJetOrder);

}  // namespace projinv
