#include "projinv/invariants.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "projinv/planeinv.hpp"
#include "projinv/projection.hpp"
#include "projinv/spaceinv.hpp"

namespace projinv {
namespace {

InvariantJet derived(const std::string& name, const InvariantJet& f, const InvariantJet& density) {
  return guarded(name, [&] { return invariant_derivative(f.get(), density.get()); });
}

InvariantJet renamed(std::string name, InvariantJet j) {
  j.name = std::move(name);
  return j;
}

}  // namespace

InvariantGroup invariant_group_from_string(std::string_view s) {
  std::string l(s);
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "sa2") return InvariantGroup::SA2;
  if (l == "a2") return InvariantGroup::A2;
  if (l == "pgl3") return InvariantGroup::PGL3;
  if (l == "sl3") return InvariantGroup::SL3;
  if (l == "gl3") return InvariantGroup::GL3;
  if (l == "h") return InvariantGroup::H;
  throw Error(ErrorKind::UnknownIdentifier, "unknown group '" + std::string(s) + "'");
}

std::string to_string(InvariantGroup g) {
  switch (g) {
    case InvariantGroup::SA2: return "sa2";
    case InvariantGroup::A2: return "a2";
    case InvariantGroup::PGL3: return "pgl3";
    case InvariantGroup::SL3: return "sl3";
    case InvariantGroup::GL3: return "gl3";
    case InvariantGroup::H: return "H";
  }
  return "?";
}

int curve_dimension(InvariantGroup g) {
  return (g == InvariantGroup::SL3 || g == InvariantGroup::GL3 || g == InvariantGroup::H) ? 3 : 2;
}

std::vector<std::string> invariant_columns(InvariantGroup g) {
  switch (g) {
    case InvariantGroup::SA2: return {"mu", "mu_chi", "dchi"};
    case InvariantGroup::A2: return {"nu", "nu_rho", "drho", "iota_y6", "iota_y7"};
    case InvariantGroup::PGL3: return {"eta", "eta_xi", "dxi"};
    case InvariantGroup::SL3: return {"Delta", "ds", "kappa", "tau"};
    case InvariantGroup::GL3:
      return {"Delta",     "kappa",    "tau",        "kappa_hat", "tau_hat", "alpha_hat",
              "beta_hat",  "eta_hat",  "zeta_tilde", "zeta_hat1", "dsigma",  "dxi"};
    case InvariantGroup::H:
      return {"nu_hat",  "drho_hat", "iota_z",  "iota_z1",    "iota_z2",
              "iota_z3", "iota_z4",  "iota_hat_z4"};
  }
  return {};
}

std::vector<InvariantJet> evaluate_group(InvariantGroup g, const CurveSpec& curve, double t, int order) {
  std::vector<InvariantJet> out;
  switch (g) {
    case InvariantGroup::SA2: {
      const EquiAffineInvariants e = equi_affine(aligned_graph(eval_plane_jet(curve, t, order)));
      out = {renamed("mu", e.mu), renamed("mu_chi", e.mu_chi), renamed("dchi", e.chi.density)};
      break;
    }
    case InvariantGroup::A2: {
      const PlaneGraphJet pg = aligned_graph(eval_plane_jet(curve, t, order));
      const AffineInvariants a = affine(pg);
      const AffineHigher h = affine_normalized_higher(pg);
      out = {renamed("nu", a.nu), derived("nu_rho", a.nu, a.rho.density),
             renamed("drho", a.rho.density), renamed("iota_y6", h.iota_y6),
             renamed("iota_y7", h.iota_y7)};
      break;
    }
    case InvariantGroup::PGL3: {
      const ProjectiveInvariants p = projective(aligned_graph(eval_plane_jet(curve, t, order)));
      out = {renamed("eta", p.eta), derived("eta_xi", p.eta, p.xi.density),
             renamed("dxi", p.xi.density)};
      break;
    }
    case InvariantGroup::SL3: {
      const CentroEquiAffine c = centro_equi_affine(eval_space_jet(curve, t, order));
      out = {renamed("Delta", c.Delta), renamed("ds", c.ds), renamed("kappa", c.kappa),
             renamed("tau", c.tau)};
      break;
    }
    case InvariantGroup::GL3: {
      const CentroInvariants c = centro_affine(eval_space_jet(curve, t, order));
      out = {c.Delta,    c.kappa,   c.tau,        c.kappa_hat, c.tau_hat, c.alpha_hat,
             c.beta_hat, c.eta_hat, c.zeta_tilde, c.zeta_hat1, c.dsigma,  c.dxi};
      break;
    }
    case InvariantGroup::H: {
      const ParallelInvariants p =
          parallel_invariants(aligned_space_graph(eval_space_jet(curve, t, order)));
      out = {renamed("nu_hat", p.nu_hat), renamed("drho_hat", p.rho_hat_density)};
      const auto names = invariant_columns(g);
      for (std::size_t i = 0; i < p.iota_z.size(); ++i) out.push_back(renamed(names[2 + i], p.iota_z[i]));
      out.push_back(renamed("iota_hat_z4", p.iota_hat_z4));
      break;
    }
  }
  return out;
}


std::vector<InvariantRecord> invariant_records(InvariantGroup g, const CurveSpec& curve,
                                               const SampleWindow& window, int order) {
  const auto names = invariant_columns(g);
  std::vector<InvariantRecord> records;
  for (double t : window.points()) {
    std::vector<InvariantJet> jets;
    std::string sample_failure;
    try {
      jets = evaluate_group(g, curve, t, order);
    } catch (const Error& e) {
      sample_failure = e.what();
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      InvariantRecord r{names[i], t, {}, {}, {}, {}};
      if (!sample_failure.empty()) {
        r.reason = sample_failure;
      } else if (!jets[i].valid()) {
        r.reason = std::string(to_string(jets[i].failure.value_or(ErrorKind::InvalidArgument))) +
                   ": " + jets[i].reason;
      } else {
        const Jet& j = *jets[i].jet;
        if (std::isfinite(j.value())) {
          r.value = j.value();
          if (j.order() >= 1) r.d1 = j[1];
          if (j.order() >= 2) r.d2 = j[2];
        } else {
          r.reason = "DomainError: non-finite value";
        }
      }
      records.push_back(std::move(r));
    }
  }
  return records;
}

}  // namespace projinv
