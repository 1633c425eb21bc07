#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "alloystef/errors.hpp"
#include "alloystef/model.hpp"
#include "alloystef/specfun.hpp"

// Scalar interface functions F, W, G, M of the three boundary-condition
// variants and the bracketed bisection that solves the coupled pair
//   T_k = target(x),   M(x) = phi(T_k)
// for the front coefficient x (lambda, delta or mu) and the interface
// temperature T_k. Bracketing is justified by the monotonicity of M
// (decreasing) against phi(target(.)) (increasing for F and W); for G,
// which has no proven monotonicity, a dense sign-change scan is used.
//
// Every exp(a^2)-type factor is routed through erfcx so no intermediate
// can overflow.

namespace alloystef {

struct SolverConfig {
  double tol_lambda = 1e-12;    // absolute tolerance on the front coefficient
  double tol_residual = 1e-10;  // residual acceptance, scaled by max(1, |M|)
  int max_iterations = 200;
  double bracket_margin = 1e-9;  // offset from the phi pole at T_0l, relative to T_0l - T_0s

  void validate() const {
    if (!(tol_lambda > 0.0) || !(tol_residual > 0.0) || !(bracket_margin > 0.0) ||
        max_iterations <= 0)
      throw std::invalid_argument("SolverConfig: tolerances and iteration cap must be positive");
    if (!(tol_lambda < bracket_margin))
      throw std::invalid_argument("SolverConfig: requires tol_lambda < bracket_margin");
  }
};

// One similarity field u(x,t) = offset + slope * erf(x / (2 sqrt(diffusivity t))).
struct FieldCoeffs {
  double offset;
  double slope;
  double diffusivity;

  double value(double x, double t) const {
    return offset + slope * specfun::erf(x / (2.0 * std::sqrt(diffusivity * t)));
  }
  // Spatial derivative d/dx at (x, t).
  double derivative(double x, double t) const {
    const double arg = x / (2.0 * std::sqrt(diffusivity * t));
    return slope * std::exp(-arg * arg) / std::sqrt(M_PI * diffusivity * t);
  }
};

struct SimilaritySolution {
  BcKind kind;
  double front_coefficient;  // lambda, delta or mu: s(t) = 2 coef sqrt(alpha_s t)
  double T_k;                // interface temperature
  double T_fixed_face;       // T_s(0, t), constant in time
  FieldCoeffs temp_solid;
  FieldCoeffs temp_liquid;
  FieldCoeffs conc_solid;  // slope = 0: solid concentration is constant
  FieldCoeffs conc_liquid;
  ProblemSpec spec;
  double residual_Tk;     // |T_k - target(front_coefficient)|
  double residual_M_phi;  // |M(front_coefficient) - phi(T_k)|
  std::vector<std::string> warnings;
};

// M(x) = 1 / Q(sqrt(alpha_s/d_l) x): decreasing from +inf to 1.
inline double eval_M(const ProblemSpec& s, double x) {
  if (!(x > 0.0)) throw std::domain_error("eval_M: requires x > 0");
  const double c = std::sqrt(s.material.solid.alpha / s.material.liquid.d);
  return 1.0 / specfun::q_of(c * x);
}

// F(x) = T0 + (gamma rho alpha_l / k_l) Q(c x)
//          - (q0 / k_l) sqrt(alpha_l pi) exp(-x^2) F1(c x),  c = sqrt(alpha_s/alpha_l).
inline double eval_F(const ProblemSpec& s, double x) {
  if (!(x > 0.0)) throw std::domain_error("eval_F: requires x > 0");
  const auto* bc = std::get_if<FluxBC>(&s.bc);
  if (!bc) throw std::invalid_argument("eval_F: spec does not carry a flux condition");
  const auto& m = s.material;
  const double c = std::sqrt(m.solid.alpha / m.liquid.alpha);
  return s.T0 + m.gamma * m.rho * m.liquid.alpha / m.liquid.k * specfun::q_of(c * x) -
         bc->q0 / m.liquid.k * std::sqrt(m.liquid.alpha * M_PI) * std::exp(-x * x) *
             specfun::erfcx(c * x);
}

namespace detail {

// F2(x) = h0 k_s sqrt(pi alpha_l) exp(-x^2) F1(c x) / (k_l (k_s + h0 sqrt(pi alpha_s) erf(x)))
inline double eval_F2(const Material& m, const ConvectiveBC& bc, double x) {
  const double c = std::sqrt(m.solid.alpha / m.liquid.alpha);
  const double den = m.liquid.k * (m.solid.k + bc.h0 * std::sqrt(M_PI * m.solid.alpha) * specfun::erf(x));
  return bc.h0 * m.solid.k * std::sqrt(M_PI * m.liquid.alpha) * std::exp(-x * x) *
         specfun::erfcx(c * x) / den;
}

// H(x) = h0 k_s sqrt(pi alpha_l) exp(-x^2) / (x (k_s + h0 sqrt(pi alpha_s) erf(x)))
//        + k_l sqrt(pi alpha_s) / (sqrt(alpha_l) Q(c x))
inline double eval_H(const Material& m, const ConvectiveBC& bc, double x) {
  const double c = std::sqrt(m.solid.alpha / m.liquid.alpha);
  const double first = bc.h0 * m.solid.k * std::sqrt(M_PI * m.liquid.alpha) * std::exp(-x * x) /
                       (x * (m.solid.k + bc.h0 * std::sqrt(M_PI * m.solid.alpha) * specfun::erf(x)));
  const double second = m.liquid.k * std::sqrt(M_PI * m.solid.alpha) /
                        (std::sqrt(m.liquid.alpha) * specfun::q_of(c * x));
  return first + second;
}

}  // namespace detail

// W(x) = T_inf + (T0 - T_inf)/(F2(x) + 1) + gamma rho sqrt(pi alpha_s alpha_l) / H(x).
inline double eval_W(const ProblemSpec& s, double x) {
  if (!(x > 0.0)) throw std::domain_error("eval_W: requires x > 0");
  const auto* bc = std::get_if<ConvectiveBC>(&s.bc);
  if (!bc) throw std::invalid_argument("eval_W: spec does not carry a convective condition");
  const auto& m = s.material;
  return bc->T_inf + (s.T0 - bc->T_inf) / (detail::eval_F2(m, *bc, x) + 1.0) +
         m.gamma * m.rho * std::sqrt(M_PI * m.solid.alpha * m.liquid.alpha) /
             detail::eval_H(m, *bc, x);
}

// G in the overflow-safe ratio form: dividing numerator and denominator of
//   G = (gr as al Q1 Q(cx) + T1 ks al Q(cx) + T0 kl as Q1) / (ks al Q(cx) + kl as Q1)
// by Q1(x) and writing r(x) = Q(cx)/Q1(x) = c erfcx(cx) exp(-x^2)/erf(x)
// leaves only bounded factors, so G is finite for all x > 0 while Q1 itself
// would overflow past x ~ 26.
inline double eval_G(const ProblemSpec& s, double x) {
  if (!(x > 0.0)) throw std::domain_error("eval_G: requires x > 0");
  const auto* bc = std::get_if<DirichletBC>(&s.bc);
  if (!bc) throw std::invalid_argument("eval_G: spec does not carry a Dirichlet condition");
  const auto& m = s.material;
  const double as = m.solid.alpha, al = m.liquid.alpha;
  const double c = std::sqrt(as / al);
  const double r = c * specfun::erfcx(c * x) * std::exp(-x * x) / specfun::erf(x);
  const double q = specfun::q_of(c * x);
  return (m.gamma * m.rho * as * al * q + bc->T1 * m.solid.k * al * r + s.T0 * m.liquid.k * as) /
         (m.solid.k * al * r + m.liquid.k * as);
}

// Increasing interface function of the active boundary condition.
inline double eval_target(const ProblemSpec& s, double x) {
  switch (s.kind()) {
    case BcKind::flux: return eval_F(s, x);
    case BcKind::convective: return eval_W(s, x);
    default: return eval_G(s, x);
  }
}

// Finds x_max with target(x_max) = T_0l - bracket_margin (T_0l - T_0s): the
// root search must stay left of the phi pole at T_0l, where sign information
// from M - phi(target) turns spurious.
template <class Fn>
double find_upper_bracket_for(Fn&& target, double T_0l, double T_0s, const SolverConfig& cfg = {}) {
  cfg.validate();
  const double level = T_0l - cfg.bracket_margin * (T_0l - T_0s);
  double lo = 1e-12, hi = 1e3;
  const double f_lo = target(lo) - level;
  if (f_lo >= 0.0) {
    std::ostringstream os;
    os << "find_upper_bracket: target(" << lo << ") = " << target(lo)
       << " already reaches " << level << " (admissibility gate violated)";
    throw solver_error(os.str());
  }
  if (target(hi) - level <= 0.0) {
    std::ostringstream os;
    os << "find_upper_bracket: no sign change within [1e-12, 1e3]; target(1e3) = " << target(hi)
       << " stays below " << level;
    throw solver_error(os.str());
  }
  for (int i = 0; i < cfg.max_iterations && (hi - lo) > cfg.tol_lambda; ++i) {
    const double mid = 0.5 * (lo + hi);
    (target(mid) - level < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double find_upper_bracket(const ProblemSpec& s, const SolverConfig& cfg = {}) {
  const auto [t0s, t0l] = characteristic_temperatures(s);
  return find_upper_bracket_for([&](double x) { return eval_target(s, x); }, t0l, t0s, cfg);
}

namespace detail {

struct RootResult {
  double x;
  double residual;  // |M(x) - phi(target(x))|
};

// Bisection for the unique zero of g(x) = M(x) - phi(target(x)) inside
// (a, b], where g(a+) > 0 is known structurally (M blows up at 0+) and
// g(b) < 0 has been certified by the caller. The bracket keeps shrinking
// past tol_lambda, down to ULP width if needed, until the residual meets
// the scale-aware acceptance: near the admissibility bounds |dg/dx| is so
// large that a 1e-12 bracket alone leaves the residual far above its floor.
template <class G>
RootResult bisect_root(G&& g, double a, double b, const SolverConfig& cfg) {
  double best_x = b;
  double best_abs = std::fabs(g(b));
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;  // bracket exhausted at ULP width
    const double gm = g(mid);
    const double abs_gm = std::fabs(gm);
    if (abs_gm < best_abs) {
      best_abs = abs_gm;
      best_x = mid;
    }
    if (gm < 0.0)
      b = mid;
    else
      a = mid;
    if ((b - a) <= cfg.tol_lambda && best_abs <= cfg.tol_residual) break;
  }
  return {best_x, best_abs};
}

inline double phi_of_spec(const ProblemSpec& s, double T) { return s.diagram.phi_of(s.C0, T); }

}  // namespace detail

// Solves T_k = target(x), M(x) = phi(T_k) given a certified gate, and
// assembles the similarity field coefficients shared by all variants.
inline SimilaritySolution solve_coupled(const ProblemSpec& s, const SolverConfig& cfg) {
  cfg.validate();
  validate_spec(s);

  const auto [t0s, t0l] = characteristic_temperatures(s);
  const auto target = [&](double x) { return eval_target(s, x); };
  const auto g = [&](double x) { return eval_M(s, x) - detail::phi_of_spec(s, target(x)); };

  const double x_max = find_upper_bracket(s, cfg);
  std::vector<std::string> warnings;

  double a = 0.0, b = x_max;  // g(0+) = +inf structurally; never evaluated at 0
  if (s.kind() == BcKind::dirichlet) {
    // G has no proven monotonicity: locate the first sign change by a dense
    // scan (g > 0 region to g <= 0 region), then count any further flips.
    const double step = std::min(1e-3, x_max / 1000.0);
    int sign_changes = 0;
    double first_a = 0.0, first_b = 0.0;
    double prev_x = step;
    bool prev_pos = g(step) > 0.0;
    if (!prev_pos) {  // root already below the first scan point
      sign_changes = 1;
      first_a = 0.0;
      first_b = step;
    }
    for (double x = 2.0 * step; prev_x < x_max; x += step) {
      if (x > x_max) x = x_max;
      const bool pos = g(x) > 0.0;
      if (pos != prev_pos) {
        ++sign_changes;
        if (sign_changes == 1) {
          first_a = prev_x;
          first_b = x;
        }
      }
      prev_x = x;
      prev_pos = pos;
      if (x >= x_max) break;
    }
    if (sign_changes == 0) {
      std::ostringstream os;
      os << "solve_dirichlet: no Rubinstein solution detected for this T1 "
         << "(no sign change of M - phi(G) on (0, " << x_max << "])";
      throw solver_error(os.str());
    }
    if (sign_changes > 1) {
      std::ostringstream os;
      os << "multiple sign changes of M - phi(G) detected (" << sign_changes
         << "); returning the root in the first bracket";
      warnings.push_back(os.str());
    }
    a = first_a;
    b = first_b;
  } else if (g(b) > 0.0) {
    std::ostringstream os;
    os << "solver: g(x_max) = " << g(b) << " > 0 at x_max = " << x_max
       << " (no certified sign change; M(x_max) = " << eval_M(s, x_max) << ")";
    throw solver_error(os.str());
  }

  const auto root = detail::bisect_root(g, a, b, cfg);
  const double coef = root.x;
  const double T_k = target(coef);

  const double M_at_root = eval_M(s, coef);
  const double residual_M_phi = std::fabs(M_at_root - detail::phi_of_spec(s, T_k));
  if (residual_M_phi > cfg.tol_residual * std::max(1.0, std::fabs(M_at_root))) {
    std::ostringstream os;
    os << "solver: residual |M - phi| = " << residual_M_phi << " at x = " << coef
       << " exceeds tolerance " << cfg.tol_residual << " (scale " << std::max(1.0, M_at_root)
       << "; bracket [" << a << ", " << b << "])";
    throw solver_error(os.str());
  }
  if (!(T_k >= t0s - 1e-12) || !(T_k < t0l)) {
    std::ostringstream os;
    os << "solver: interface temperature " << T_k << " escaped [T_0s, T_0l) = [" << t0s << ", "
       << t0l << ")";
    throw solver_error(os.str());
  }

  const auto& m = s.material;
  const double c = std::sqrt(m.solid.alpha / m.liquid.alpha);
  const double cd = std::sqrt(m.solid.alpha / m.liquid.d);

  SimilaritySolution sol{
      s.kind(), coef, T_k, 0.0,
      FieldCoeffs{},  // temp_solid, per variant below
      FieldCoeffs{0.0, 0.0, m.liquid.alpha},
      FieldCoeffs{s.diagram.solidus(T_k), 0.0, m.solid.d},
      FieldCoeffs{0.0, 0.0, m.liquid.d},
      s, 0.0, residual_M_phi, std::move(warnings)};

  const double erf_coef = specfun::erf(coef);
  switch (s.kind()) {
    case BcKind::flux: {
      const double q0 = std::get<FluxBC>(s.bc).q0;
      const double slope = q0 * std::sqrt(M_PI * m.solid.alpha) / m.solid.k;
      sol.temp_solid = {T_k - slope * erf_coef, slope, m.solid.alpha};
      break;
    }
    case BcKind::convective: {
      const auto& bc = std::get<ConvectiveBC>(s.bc);
      const double den = m.solid.k + bc.h0 * std::sqrt(M_PI * m.solid.alpha) * erf_coef;
      const double slope = bc.h0 * std::sqrt(M_PI * m.solid.alpha) * (T_k - bc.T_inf) / den;
      sol.temp_solid = {bc.T_inf + m.solid.k * (T_k - bc.T_inf) / den, slope, m.solid.alpha};
      break;
    }
    case BcKind::dirichlet: {
      const double T1 = std::get<DirichletBC>(s.bc).T1;
      sol.temp_solid = {T1, (T_k - T1) / erf_coef, m.solid.alpha};
      break;
    }
  }
  sol.T_fixed_face = sol.temp_solid.offset;

  const double slope_Tl = (s.T0 - T_k) / specfun::erfc(c * coef);
  sol.temp_liquid = {s.T0 - slope_Tl, slope_Tl, m.liquid.alpha};

  const double slope_Cl = (s.C0 - s.diagram.liquidus(T_k)) / specfun::erfc(cd * coef);
  sol.conc_liquid = {s.C0 - slope_Cl, slope_Cl, m.liquid.d};

  sol.residual_Tk = std::fabs(T_k - target(coef));
  return sol;
}

inline SimilaritySolution solve_flux(const ProblemSpec& s, const SolverConfig& cfg = {}) {
  const auto gate = check_admissibility_flux(s);
  if (!gate.admissible) {
    std::ostringstream os;
    os << "solve_flux: q0 = " << gate.actual.value() << " outside the open interval ("
       << gate.lower_bound << ", " << gate.upper_bound << ")";
    throw admissibility_error(os.str());
  }
  return solve_coupled(s, cfg);
}

inline SimilaritySolution solve_convective(const ProblemSpec& s, const SolverConfig& cfg = {}) {
  const auto gate = check_admissibility_convective(s);
  if (!gate.admissible) {
    std::ostringstream os;
    os << "solve_convective: h0 = " << gate.actual.value() << " outside the open interval ("
       << gate.lower_bound << ", " << gate.upper_bound << ")";
    throw admissibility_error(os.str());
  }
  return solve_coupled(s, cfg);
}

inline SimilaritySolution solve_dirichlet(const ProblemSpec& s, const SolverConfig& cfg = {}) {
  const auto gate = check_admissibility_dirichlet(s);
  if (!gate.admissible) {
    std::ostringstream os;
    os << "solve_dirichlet: T1 = " << std::get<DirichletBC>(s.bc).T1
       << " outside the open interval (T_A, T_0l) = (" << gate.lower_bound << ", "
       << gate.upper_bound << ")";
    throw admissibility_error(os.str());
  }
  return solve_coupled(s, cfg);
}

inline SimilaritySolution solve(const ProblemSpec& s, const SolverConfig& cfg = {}) {
  switch (s.kind()) {
    case BcKind::flux: return solve_flux(s, cfg);
    case BcKind::convective: return solve_convective(s, cfg);
    default: return solve_dirichlet(s, cfg);
  }
}

}  // namespace alloystef
