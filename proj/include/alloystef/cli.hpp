#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "alloystef/config.hpp"
#include "alloystef/fields.hpp"
#include "alloystef/verify.hpp"
#include "alloystef/version.hpp"

// Command dispatch and bit-stable tabular/summary output. All diagnostics
// go to the error stream; data goes to --out files or standard output.

namespace alloystef::cli {

using json = nlohmann::ordered_json;

// Exit codes: 0 success, 2 inadmissible data, 3 solver failure,
// 4 configuration error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_inadmissible = 2;
inline constexpr int exit_solver_failure = 3;
inline constexpr int exit_config_error = 4;

// ALLOYSTEF_LOG=info|debug turns on progress diagnostics on stderr.
inline bool log_enabled() {
  static const bool enabled = [] {
    const char* v = std::getenv("ALLOYSTEF_LOG");
    return v != nullptr && *v != '\0' && std::string(v) != "0" && std::string(v) != "off";
  }();
  return enabled;
}

inline void log(const std::string& msg) {
  if (log_enabled()) std::cerr << "alloystef: " << msg << "\n";
}

struct CommandParams {
  std::vector<double> times{1.0};
  std::optional<double> x_max;  // profile window; defaults to 8 s(t_max)
  int n_x = 50;
  std::string sweep_param;  // "q0" or "h0"
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_steps = 0;
  std::string out_path;  // empty: standard output
};

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_output(const std::string& out_path, const std::string& data) {
  if (out_path.empty()) {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw config_error("cannot open output path: " + out_path);
  out << data;
  if (!out) throw config_error("failed writing output: " + out_path);
}

inline json admissibility_json(const AdmissibilityReport& r) {
  json j;
  j["lower_bound"] = r.lower_bound;
  j["upper_bound"] = r.upper_bound;
  if (r.actual) j["actual"] = *r.actual;
  j["admissible"] = r.admissible;
  j["T_0l"] = r.T_0l;
  j["T_0s"] = r.T_0s;
  return j;
}

inline json header_json(const RunConfig& cfg) {
  json j;
  j["artifact"] = {{"name", "alloystef"}, {"version", version}};
  j["config"] = {{"path", cfg.path}, {"text", cfg.raw_text}};
  return j;
}

inline json solution_json(const SimilaritySolution& sol) {
  json j;
  j["kind"] = to_string(sol.kind);
  j["front_coefficient"] = sol.front_coefficient;
  j["T_k"] = sol.T_k;
  j["T_fixed_face"] = sol.T_fixed_face;
  j["residuals"] = {{"Tk_minus_target", sol.residual_Tk}, {"M_minus_phi", sol.residual_M_phi}};
  j["warnings"] = sol.warnings;
  return j;
}

inline json checks_json(const verify::VerificationReport& rep) {
  json arr = json::array();
  for (const auto& c : rep.checks) {
    json j;
    j["name"] = c.name;
    j["value"] = c.value;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    if (c.informational) j["informational"] = true;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace detail

// Profile CSV: one row per sample, header `t,x,region,T,C`, 17 significant
// digits, LF line endings.
inline std::string profile_csv(const std::vector<ProfileSample>& samples) {
  if (samples.empty()) throw std::domain_error("profile_csv: no samples");
  std::string out = "t,x,region,T,C\n";
  for (const auto& p : samples) {
    out += detail::fmt17(p.t);
    out += ',';
    out += detail::fmt17(p.x);
    out += ',';
    out += to_string(p.region);
    out += ',';
    out += detail::fmt17(p.T);
    out += ',';
    out += detail::fmt17(p.C);
    out += '\n';
  }
  return out;
}

struct SweepRow {
  std::string param;
  double value;
  bool admissible;
  std::optional<double> front_coefficient;
  std::optional<double> T_k;
  std::optional<double> T_fixed_face;
};

// Sweep CSV: header `param,value,admissible,front_coefficient,T_k,T_fixed_face`;
// unsolved cells stay empty.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw std::domain_error("sweep_csv: no rows");
  std::string out = "param,value,admissible,front_coefficient,T_k,T_fixed_face\n";
  for (const auto& r : rows) {
    out += r.param;
    out += ',';
    out += detail::fmt17(r.value);
    out += ',';
    out += r.admissible ? "true" : "false";
    out += ',';
    if (r.front_coefficient) out += detail::fmt17(*r.front_coefficient);
    out += ',';
    if (r.T_k) out += detail::fmt17(*r.T_k);
    out += ',';
    if (r.T_fixed_face) out += detail::fmt17(*r.T_fixed_face);
    out += '\n';
  }
  return out;
}

inline int cmd_check(const RunConfig& cfg, const CommandParams& p) {
  const auto report = check_admissibility(cfg.spec);
  json j = detail::header_json(cfg);
  j["admissibility"] = detail::admissibility_json(report);
  detail::write_output(p.out_path, j.dump(2) + "\n");
  return report.admissible ? exit_ok : exit_inadmissible;
}

inline int cmd_solve(const RunConfig& cfg, const CommandParams& p) {
  const auto sol = solve(cfg.spec, cfg.solver);
  log("solved " + std::string(to_string(sol.kind)) +
      ": front_coefficient = " + detail::fmt17(sol.front_coefficient));
  json j = detail::header_json(cfg);
  j.update(detail::solution_json(sol));
  j["admissibility"] = detail::admissibility_json(check_admissibility(cfg.spec));
  detail::write_output(p.out_path, j.dump(2) + "\n");
  return exit_ok;
}

inline int cmd_profile(const RunConfig& cfg, const CommandParams& p) {
  const auto sol = solve(cfg.spec, cfg.solver);
  double x_max = p.x_max.value_or(0.0);
  if (!(x_max > 0.0)) {
    double t_max = 0.0;
    for (double t : p.times) t_max = std::max(t_max, t);
    x_max = 8.0 * front_position(sol, t_max);
  }
  const auto samples = sample_profile(sol, p.times, x_max, p.n_x);
  detail::write_output(p.out_path, profile_csv(samples));
  return exit_ok;
}

inline int cmd_verify(const RunConfig& cfg, const CommandParams& p) {
  const auto sol = solve(cfg.spec, cfg.solver);
  verify::VerificationReport rep = verify::residual_report(sol);
  for (auto&& extra : {verify::c0_interval_check(sol), verify::monotonicity_suite(cfg.spec)})
    rep.checks.insert(rep.checks.end(), extra.checks.begin(), extra.checks.end());

  json j = detail::header_json(cfg);
  j.update(detail::solution_json(sol));
  j["checks"] = detail::checks_json(rep);
  j["overall_pass"] = rep.overall_pass();
  detail::write_output(p.out_path, j.dump(2) + "\n");
  return rep.overall_pass() ? exit_ok : exit_solver_failure;
}

inline int cmd_equivalence(const RunConfig& cfg, const CommandParams& p) {
  if (cfg.spec.kind() == BcKind::dirichlet)
    throw config_error("equivalence requires a flux or convective boundary condition");
  const auto result = verify::equivalence_check(cfg.spec, cfg.solver);
  const auto bounds = verify::erf_mu_bounds_check(result.rubinstein, result.primary);
  const bool ok = verify::within_contract(result.delta) && bounds.overall_pass();

  json j = detail::header_json(cfg);
  j["kind"] = to_string(result.primary.kind);
  j["T1"] = result.T1;
  j["deltas"] = {{"front", result.delta.delta_front},
                 {"T_k", result.delta.delta_Tk},
                 {"sup_field", result.delta.sup_field_delta}};
  const verify::EquivalenceContract contract;
  j["contract"] = {{"front", contract.front}, {"T_k", contract.Tk}, {"sup_field", contract.field}};
  j["inequalities"] = detail::checks_json(bounds);
  j["within_contract"] = ok;
  detail::write_output(p.out_path, j.dump(2) + "\n");
  return ok ? exit_ok : exit_solver_failure;
}

inline int cmd_sweep(const RunConfig& cfg, const CommandParams& p) {
  if (p.sweep_param != "q0" && p.sweep_param != "h0")
    throw config_error("sweep requires --param q0 or --param h0");
  if (p.sweep_steps < 2) throw config_error("sweep requires --steps >= 2");
  const bool is_q0 = p.sweep_param == "q0";
  if (is_q0 && cfg.spec.kind() != BcKind::flux)
    throw config_error("sweep over q0 requires a flux boundary condition");
  if (!is_q0 && cfg.spec.kind() != BcKind::convective)
    throw config_error("sweep over h0 requires a convective boundary condition");

  std::vector<SweepRow> rows;
  bool solver_failed = false;
  for (int i = 0; i < p.sweep_steps; ++i) {
    const double v = p.sweep_from + (p.sweep_to - p.sweep_from) * i / (p.sweep_steps - 1);
    ProblemSpec s = cfg.spec;
    if (is_q0)
      std::get<FluxBC>(s.bc).q0 = v;
    else
      std::get<ConvectiveBC>(s.bc).h0 = v;
    SweepRow row{p.sweep_param, v, false, std::nullopt, std::nullopt, std::nullopt};
    row.admissible = check_admissibility(s).admissible;
    if (row.admissible) {
      try {
        const auto sol = solve(s, cfg.solver);
        row.front_coefficient = sol.front_coefficient;
        row.T_k = sol.T_k;
        row.T_fixed_face = sol.T_fixed_face;
      } catch (const std::exception& e) {
        std::cerr << "alloystef: sweep point " << p.sweep_param << " = " << v
                  << " failed to solve: " << e.what() << "\n";
        solver_failed = true;
      }
    }
    rows.push_back(row);
  }
  detail::write_output(p.out_path, sweep_csv(rows));
  return solver_failed ? exit_solver_failure : exit_ok;
}

// Dispatches a parsed command; maps exceptions onto the exit-code contract.
inline int run_command(const RunConfig& cfg, const std::string& command, const CommandParams& p) {
  try {
    if (command == "check") return cmd_check(cfg, p);
    if (command == "solve") return cmd_solve(cfg, p);
    if (command == "profile") return cmd_profile(cfg, p);
    if (command == "verify") return cmd_verify(cfg, p);
    if (command == "equivalence") return cmd_equivalence(cfg, p);
    if (command == "sweep") return cmd_sweep(cfg, p);
    throw config_error("unknown command: " + command);
  } catch (const admissibility_error& e) {
    std::cerr << "alloystef: inadmissible data: " << e.what() << "\n";
    return exit_inadmissible;
  } catch (const solver_error& e) {
    std::cerr << "alloystef: solver failure: " << e.what() << "\n";
    return exit_solver_failure;
  } catch (const config_error& e) {
    std::cerr << "alloystef: configuration error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const std::exception& e) {
    std::cerr << "alloystef: invalid run parameters: " << e.what() << "\n";
    return exit_config_error;
  }
}

}  // namespace alloystef::cli
