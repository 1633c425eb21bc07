#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "alloystef/errors.hpp"

// Phase equilibrium diagram: liquidus C = f_l(T) and solidus C = f_s(T),
// both strictly increasing on [T_A, T_B] with equal endpoints and
// f_l < f_s strictly inside. Two concrete families are provided; both are
// immutable after construction.

namespace alloystef {

// f(T) = ((T - T_A)/(T_B - T_A))^exponent, concentrations in [0, 1].
// exponent_l > exponent_s >= 1 gives f_l < f_s on the open interval.
struct PowerLawDiagram {
  double T_A;
  double T_B;
  double exponent_l;
  double exponent_s;

  PowerLawDiagram(double t_a, double t_b, double exp_l, double exp_s)
      : T_A(t_a), T_B(t_b), exponent_l(exp_l), exponent_s(exp_s) {
    if (!(T_A < T_B)) throw std::invalid_argument("PowerLawDiagram: requires T_A < T_B");
    if (!(exponent_l >= 1.0) || !(exponent_s >= 1.0) ||
        !std::isfinite(exponent_l) || !std::isfinite(exponent_s))
      throw std::invalid_argument("PowerLawDiagram: exponents must be finite and >= 1");
    // exponent_l > exponent_s is reported by validate_diagram, not enforced
    // here, so that broken diagrams can be constructed and diagnosed.
  }

  double base(double T) const { return (T - T_A) / (T_B - T_A); }
  double liquidus(double T) const { return std::pow(base(T), exponent_l); }
  double solidus(double T) const { return std::pow(base(T), exponent_s); }
};

// Piecewise-linear curves through knots (T_i, C_l_i, C_s_i), strictly
// increasing in T.
struct TabulatedDiagram {
  struct Knot {
    double T;
    double C_l;
    double C_s;
  };
  std::vector<Knot> knots;

  explicit TabulatedDiagram(std::vector<Knot> k) : knots(std::move(k)) {
    if (knots.size() < 2) throw std::invalid_argument("TabulatedDiagram: needs >= 2 knots");
    for (const auto& kn : knots)
      if (!std::isfinite(kn.T) || !std::isfinite(kn.C_l) || !std::isfinite(kn.C_s))
        throw std::invalid_argument("TabulatedDiagram: non-finite knot");
    for (std::size_t i = 1; i < knots.size(); ++i)
      if (!(knots[i - 1].T < knots[i].T))
        throw std::invalid_argument("TabulatedDiagram: knot temperatures must be strictly increasing");
    // Monotonicity of the C columns and endpoint equality are curve axioms
    // diagnosed by validate_diagram.
  }

  double T_A() const { return knots.front().T; }
  double T_B() const { return knots.back().T; }

  double interp(double T, bool liquid) const {
    auto it = std::upper_bound(knots.begin(), knots.end(), T,
                               [](double t, const Knot& k) { return t < k.T; });
    std::size_t hi = static_cast<std::size_t>(it - knots.begin());
    if (hi == 0) hi = 1;
    if (hi == knots.size()) hi = knots.size() - 1;
    const Knot& a = knots[hi - 1];
    const Knot& b = knots[hi];
    const double w = (T - a.T) / (b.T - a.T);
    return liquid ? a.C_l + w * (b.C_l - a.C_l) : a.C_s + w * (b.C_s - a.C_s);
  }

  double liquidus(double T) const { return interp(T, true); }
  double solidus(double T) const { return interp(T, false); }
};

struct DiagramCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct DiagramValidation {
  std::vector<DiagramCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

class PhaseDiagram {
 public:
  PhaseDiagram(PowerLawDiagram d) : family_(std::move(d)) {}   // NOLINT(implicit)
  PhaseDiagram(TabulatedDiagram d) : family_(std::move(d)) {}  // NOLINT(implicit)

  double T_A() const {
    return std::visit([](const auto& d) {
      if constexpr (std::is_same_v<std::decay_t<decltype(d)>, PowerLawDiagram>) return d.T_A;
      else return d.T_A();
    }, family_);
  }
  double T_B() const {
    return std::visit([](const auto& d) {
      if constexpr (std::is_same_v<std::decay_t<decltype(d)>, PowerLawDiagram>) return d.T_B;
      else return d.T_B();
    }, family_);
  }

  double liquidus(double T) const {
    check_T(T);
    return std::visit([T](const auto& d) { return d.liquidus(T); }, family_);
  }
  double solidus(double T) const {
    check_T(T);
    return std::visit([T](const auto& d) { return d.solidus(T); }, family_);
  }

  // T_{0l} = f_l^{-1}(C): bisection on the monotone curve, |error| <= 1e-13.
  double inv_liquidus(double C) const { return invert(C, true); }
  // T_{0s} = f_s^{-1}(C).
  double inv_solidus(double C) const { return invert(C, false); }

  // phi(T) = (f_s(T) - f_l(T)) / (C0 - f_l(T)), defined for T in (T_A, T_B)
  // away from the pole at T_{0l} where C0 = f_l(T).
  double phi_of(double C0, double T) const {
    if (!(T > T_A()) || !(T < T_B()))
      throw std::domain_error("phi_of: T must lie strictly inside (T_A, T_B)");
    const double fl = std::visit([T](const auto& d) { return d.liquidus(T); }, family_);
    const double fs = std::visit([T](const auto& d) { return d.solidus(T); }, family_);
    const double den = C0 - fl;
    if (std::fabs(den) < 1e-14)
      throw std::domain_error("phi_of: evaluated at the pole T_{0l} (C0 = f_l(T))");
    return (fs - fl) / den;
  }

  DiagramValidation validate() const {
    DiagramValidation v;
    const double ta = T_A(), tb = T_B();
    const auto fl = [&](double T) { return std::visit([T](const auto& d) { return d.liquidus(T); }, family_); };
    const auto fs = [&](double T) { return std::visit([T](const auto& d) { return d.solidus(T); }, family_); };

    const bool ends = std::fabs(fl(ta) - fs(ta)) <= 1e-12 && std::fabs(fl(tb) - fs(tb)) <= 1e-12;
    v.checks.push_back({"endpoint_equality", ends,
                        ends ? "" : "f_l and f_s differ at T_A or T_B"});

    constexpr int n = 1000;
    bool mono_l = true, mono_s = true, ordered = true;
    double prev_l = fl(ta), prev_s = fs(ta);
    for (int i = 1; i <= n; ++i) {
      const double T = ta + (tb - ta) * i / n;
      const double cl = fl(T), cs = fs(T);
      if (!(cl > prev_l)) mono_l = false;
      if (!(cs > prev_s)) mono_s = false;
      if (i < n && !(cl < cs)) ordered = false;
      prev_l = cl;
      prev_s = cs;
    }
    v.checks.push_back({"liquidus_strictly_increasing", mono_l, ""});
    v.checks.push_back({"solidus_strictly_increasing", mono_s, ""});
    v.checks.push_back({"liquidus_below_solidus_interior", ordered, ""});
    return v;
  }

  bool is_power_law() const { return std::holds_alternative<PowerLawDiagram>(family_); }
  const PowerLawDiagram& power_law() const { return std::get<PowerLawDiagram>(family_); }
  const TabulatedDiagram& tabulated() const { return std::get<TabulatedDiagram>(family_); }

 private:
  void check_T(double T) const {
    if (!(T >= T_A()) || !(T <= T_B()))
      throw std::domain_error("phase diagram: temperature outside [T_A, T_B]");
  }

  double invert(double C, bool liquid) const {
    const auto f = [&](double T) {
      return std::visit([&](const auto& d) { return liquid ? d.liquidus(T) : d.solidus(T); }, family_);
    };
    double lo = T_A(), hi = T_B();
    const double c_lo = f(lo), c_hi = f(hi);
    if (!(C >= c_lo) || !(C <= c_hi))
      throw std::domain_error("phase diagram: concentration outside curve range");
    if (C == c_lo) return lo;
    if (C == c_hi) return hi;
    for (int i = 0; i < 200 && (hi - lo) > 1e-13; ++i) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < C ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  std::variant<PowerLawDiagram, TabulatedDiagram> family_;
};

// Loads a tabulated diagram from a plain-text table: header line "T C_l C_s",
// then whitespace-separated rows with strictly increasing T.
inline TabulatedDiagram load_tabulated_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open diagram table: " + path);
  std::string header;
  if (!std::getline(in, header)) throw config_error("diagram table is empty: " + path);
  std::istringstream hs(header);
  std::string h1, h2, h3;
  hs >> h1 >> h2 >> h3;
  if (h1 != "T" || h2 != "C_l" || h3 != "C_s")
    throw config_error("diagram table header must be 'T C_l C_s': " + path);
  std::vector<TabulatedDiagram::Knot> knots;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ls(line);
    TabulatedDiagram::Knot k{};
    if (!(ls >> k.T >> k.C_l >> k.C_s))
      throw config_error(path + ":" + std::to_string(lineno) + ": expected three numeric columns");
    knots.push_back(k);
  }
  try {
    return TabulatedDiagram(std::move(knots));
  } catch (const std::invalid_argument& e) {
    throw config_error(path + ": " + e.what());
  }
}

}  // namespace alloystef
