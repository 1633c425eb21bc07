#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "alloystef/solver.hpp"

// Closed-form evaluation of temperature, concentration, phase region and
// front position from a solved SimilaritySolution.

namespace alloystef {

enum class Region { solid, interface, liquid };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::solid: return "solid";
    case Region::interface: return "interface";
    default: return "liquid";
  }
}

struct ProfileSample {
  double t;
  double x;
  Region region;
  double T;
  double C;              // liquid-side value at the interface
  double C_solid_side;   // equals C except at the interface, where both sides differ
};

// s(t) = 2 coef sqrt(alpha_s t).
inline double front_position(const SimilaritySolution& sol, double t) {
  if (!(t > 0.0)) throw std::domain_error("front_position: requires t > 0");
  return 2.0 * sol.front_coefficient * std::sqrt(sol.spec.material.solid.alpha * t);
}

inline bool on_interface(const SimilaritySolution& sol, double x, double t) {
  const double s = front_position(sol, t);
  return std::fabs(x - s) <= 1e-12 * std::max(1.0, s);
}

inline Region region_at(const SimilaritySolution& sol, double x, double t) {
  if (on_interface(sol, x, t)) return Region::interface;
  return x < front_position(sol, t) ? Region::solid : Region::liquid;
}

// Branch selected by x against s(t); exactly on the front both branches
// meet at T_k, which is returned directly.
inline double temperature_at(const SimilaritySolution& sol, double x, double t) {
  if (!(t > 0.0)) throw std::domain_error("temperature_at: requires t > 0");
  if (!(x >= 0.0)) throw std::domain_error("temperature_at: requires x >= 0");
  switch (region_at(sol, x, t)) {
    case Region::interface: return sol.T_k;
    case Region::solid: return sol.temp_solid.value(x, t);
    default: return sol.temp_liquid.value(x, t);
  }
}

// Solid branch is the constant f_s(T_k); on the front the liquid-side value
// f_l(T_k) is returned (the solid side is surfaced via ProfileSample).
inline double concentration_at(const SimilaritySolution& sol, double x, double t) {
  if (!(t > 0.0)) throw std::domain_error("concentration_at: requires t > 0");
  if (!(x >= 0.0)) throw std::domain_error("concentration_at: requires x >= 0");
  switch (region_at(sol, x, t)) {
    case Region::interface: return sol.spec.diagram.liquidus(sol.T_k);
    case Region::solid: return sol.conc_solid.offset;
    default: return sol.conc_liquid.value(x, t);
  }
}

// T_s(0, t), constant in time for every boundary variant.
inline double fixed_face_temperature(const SimilaritySolution& sol) {
  return sol.T_fixed_face;
}

// Uniform x-grid per time plus one exact sample at x = s(t), ordered by
// (t, x). The interface row carries both concentrations.
inline std::vector<ProfileSample> sample_profile(const SimilaritySolution& sol,
                                                 const std::vector<double>& times,
                                                 double x_max, int n_x) {
  if (times.empty()) throw std::domain_error("sample_profile: requires at least one time");
  for (double t : times)
    if (!(t > 0.0)) throw std::domain_error("sample_profile: all times must be > 0");
  if (!(x_max > 0.0)) throw std::domain_error("sample_profile: requires x_max > 0");
  if (n_x < 2) throw std::domain_error("sample_profile: requires n_x >= 2");

  std::vector<double> ordered_times = times;
  std::sort(ordered_times.begin(), ordered_times.end());

  std::vector<ProfileSample> out;
  out.reserve(ordered_times.size() * (static_cast<std::size_t>(n_x) + 1));
  for (double t : ordered_times) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n_x) + 1);
    for (int i = 0; i < n_x; ++i) xs.push_back(x_max * i / (n_x - 1));
    const double s = front_position(sol, t);
    if (std::find(xs.begin(), xs.end(), s) == xs.end()) xs.push_back(s);
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
      ProfileSample p{};
      p.t = t;
      p.x = x;
      p.region = region_at(sol, x, t);
      p.T = temperature_at(sol, x, t);
      p.C = concentration_at(sol, x, t);
      p.C_solid_side = p.region == Region::liquid ? p.C : sol.conc_solid.offset;
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace alloystef
