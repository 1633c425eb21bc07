#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "alloystef/phase_diagram.hpp"
#include "alloystef/specfun.hpp"

// Problem data for the two-phase binary-alloy solidification problem and
// the admissibility gates that decide whether instantaneous solidification
// occurs for the given boundary data.

namespace alloystef {

struct PhaseProperties {
  double k;      // thermal conductivity, W/(m K)
  double alpha;  // thermal diffusivity, m^2/s
  double d;      // mass diffusivity, m^2/s
};

struct Material {
  PhaseProperties solid;
  PhaseProperties liquid;
  double rho;    // mass density, kg/m^3
  double gamma;  // latent heat per unit mass, J/kg
};

// Boundary condition at the fixed face x = 0.
struct FluxBC {
  double q0;  // k_s T_sx(0,t) = q0/sqrt(t), q0 > 0
};
struct ConvectiveBC {
  double h0;     // k_s T_sx(0,t) = h0/sqrt(t) (T_s(0,t) - T_inf), h0 > 0
  double T_inf;  // bulk temperature far from the face
};
struct DirichletBC {
  double T1;  // T_s(0,t) = T1 (Rubinstein problem)
};
using BoundaryCondition = std::variant<FluxBC, ConvectiveBC, DirichletBC>;

enum class BcKind { flux, convective, dirichlet };

inline BcKind bc_kind(const BoundaryCondition& bc) {
  if (std::holds_alternative<FluxBC>(bc)) return BcKind::flux;
  if (std::holds_alternative<ConvectiveBC>(bc)) return BcKind::convective;
  return BcKind::dirichlet;
}

inline const char* to_string(BcKind k) {
  switch (k) {
    case BcKind::flux: return "flux";
    case BcKind::convective: return "convective";
    default: return "dirichlet";
  }
}

struct ProblemSpec {
  Material material;
  PhaseDiagram diagram;
  double T0;  // initial liquid temperature
  double C0;  // initial concentration
  BoundaryCondition bc;

  BcKind kind() const { return bc_kind(bc); }
};

// Throws std::invalid_argument naming the violated invariant.
inline void validate_spec(const ProblemSpec& s) {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string("ProblemSpec: ") + name + " must be positive and finite");
  };
  positive(s.material.solid.k, "k_s");
  positive(s.material.solid.alpha, "alpha_s");
  positive(s.material.solid.d, "d_s");
  positive(s.material.liquid.k, "k_l");
  positive(s.material.liquid.alpha, "alpha_l");
  positive(s.material.liquid.d, "d_l");
  positive(s.material.rho, "rho");
  positive(s.material.gamma, "gamma");

  if (!(s.diagram.T_A() < s.T0 && s.T0 < s.diagram.T_B()))
    throw std::invalid_argument("ProblemSpec: violates T_A < T0 < T_B");
  if (!(s.C0 < s.diagram.liquidus(s.T0)))
    throw std::invalid_argument("ProblemSpec: violates C0 < f_l(T0) (alloy must start liquid)");
  const double c_min = s.diagram.liquidus(s.diagram.T_A());
  const double c_max = s.diagram.liquidus(s.diagram.T_B());
  if (!(s.C0 > c_min && s.C0 < c_max))
    throw std::invalid_argument("ProblemSpec: C0 must lie strictly inside the shared concentration range");
  if (const auto* f = std::get_if<FluxBC>(&s.bc)) {
    if (!(f->q0 > 0.0)) throw std::invalid_argument("ProblemSpec: requires q0 > 0");
  } else if (const auto* c = std::get_if<ConvectiveBC>(&s.bc)) {
    if (!(c->h0 > 0.0)) throw std::invalid_argument("ProblemSpec: requires h0 > 0");
    if (!std::isfinite(c->T_inf)) throw std::invalid_argument("ProblemSpec: T_inf must be finite");
  } else if (const auto* d = std::get_if<DirichletBC>(&s.bc)) {
    if (!std::isfinite(d->T1)) throw std::invalid_argument("ProblemSpec: T1 must be finite");
  }
}

struct CharacteristicTemperatures {
  double T_0s;  // f_s^{-1}(C0)
  double T_0l;  // f_l^{-1}(C0)
};

inline CharacteristicTemperatures characteristic_temperatures(const ProblemSpec& s) {
  return {s.diagram.inv_solidus(s.C0), s.diagram.inv_liquidus(s.C0)};
}

struct AdmissibilityReport {
  double lower_bound;
  double upper_bound;
  std::optional<double> actual;  // q0 or h0; empty for Dirichlet
  bool admissible;
  double T_0l;
  double T_0s;
};

// Gate for the heat-flux condition:
//   (T0 - T_0l) k_l / sqrt(pi alpha_l) < q0 < (T0 - T_0s) k_l / sqrt(pi alpha_l),
// strict at both ends.
inline AdmissibilityReport check_admissibility_flux(const ProblemSpec& s) {
  const auto* bc = std::get_if<FluxBC>(&s.bc);
  if (!bc) throw std::invalid_argument("check_admissibility_flux: spec does not carry a flux condition");
  const auto [t0s, t0l] = characteristic_temperatures(s);
  const double denom = std::sqrt(M_PI * s.material.liquid.alpha);
  const double lower = (s.T0 - t0l) * s.material.liquid.k / denom;
  const double upper = (s.T0 - t0s) * s.material.liquid.k / denom;
  const bool ok = lower < bc->q0 && bc->q0 < upper;
  return {lower, upper, bc->q0, ok, t0l, t0s};
}

// Gate for the convective condition (Eq. form with T_inf):
//   (T0 - T_0l) k_l / ((T_0l - T_inf) sqrt(pi alpha_l)) < h0
//       < (T0 - T_0s) k_l / ((T_0s - T_inf) sqrt(pi alpha_l)).
// Requires T_inf < T_0s so that both denominators are positive.
inline AdmissibilityReport check_admissibility_convective(const ProblemSpec& s) {
  const auto* bc = std::get_if<ConvectiveBC>(&s.bc);
  if (!bc) throw std::invalid_argument("check_admissibility_convective: spec does not carry a convective condition");
  const auto [t0s, t0l] = characteristic_temperatures(s);
  if (!(bc->T_inf < t0s))
    throw std::invalid_argument("check_admissibility_convective: requires T_inf < T_0s = f_s^{-1}(C0)");
  const double denom = std::sqrt(M_PI * s.material.liquid.alpha);
  const double lower = (s.T0 - t0l) * s.material.liquid.k / ((t0l - bc->T_inf) * denom);
  const double upper = (s.T0 - t0s) * s.material.liquid.k / ((t0s - bc->T_inf) * denom);
  const bool ok = lower < bc->h0 && bc->h0 < upper;
  return {lower, upper, bc->h0, ok, t0l, t0s};
}

// Working gate for the fixed-temperature condition: T_A < T1 < T_0l.
// Final confirmation is the solver's sign-change detection.
inline AdmissibilityReport check_admissibility_dirichlet(const ProblemSpec& s) {
  const auto* bc = std::get_if<DirichletBC>(&s.bc);
  if (!bc) throw std::invalid_argument("check_admissibility_dirichlet: spec does not carry a Dirichlet condition");
  const auto [t0s, t0l] = characteristic_temperatures(s);
  const double lower = s.diagram.T_A();
  const double upper = t0l;
  const bool ok = lower < bc->T1 && bc->T1 < upper;
  return {lower, upper, std::nullopt, ok, t0l, t0s};
}

inline AdmissibilityReport check_admissibility(const ProblemSpec& s) {
  switch (s.kind()) {
    case BcKind::flux: return check_admissibility_flux(s);
    case BcKind::convective: return check_admissibility_convective(s);
    default: return check_admissibility_dirichlet(s);
  }
}

}  // namespace alloystef
