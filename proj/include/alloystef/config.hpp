#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "alloystef/errors.hpp"
#include "alloystef/model.hpp"
#include "alloystef/solver.hpp"

// Flat sectioned key-value configuration ("[material.solid]\nk = 1.0"
// style). Strict: unknown sections or keys are rejected, every violation
// is reported with its line number.

namespace alloystef::cli {

struct RunConfig {
  ProblemSpec spec;
  SolverConfig solver;
  std::string path;
  std::string raw_text;  // echoed verbatim into JSON summaries
};

namespace detail {

struct Entry {
  std::string value;
  int line;
  bool consumed = false;
};
using SectionMap = std::map<std::string, std::map<std::string, Entry>>;

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline SectionMap parse_sections(const std::string& path, const std::string& text) {
  SectionMap sections;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error(path + ":" + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw config_error(path + ":" + std::to_string(lineno) + ": empty section name");
      sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw config_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    if (section.empty())
      throw config_error(path + ":" + std::to_string(lineno) + ": key outside any [section]");
    if (!sections[section].emplace(key, Entry{value, lineno}).second)
      throw config_error(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return sections;
}

class Reader {
 public:
  Reader(const std::string& path, SectionMap& sections) : path_(path), sections_(sections) {}

  bool has_section(const std::string& section) const { return sections_.count(section) > 0; }

  std::string get_string(const std::string& section, const std::string& key) {
    Entry* e = find(section, key);
    if (!e)
      throw config_error(path_ + ": missing required key '" + key + "' in [" + section + "]");
    e->consumed = true;
    return e->value;
  }

  double get_number(const std::string& section, const std::string& key) {
    const std::string raw = get_string(section, key);
    return to_number(section, key, raw);
  }

  double get_number_or(const std::string& section, const std::string& key, double fallback) {
    Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    return to_number(section, key, e->value);
  }

  void reject_unconsumed() const {
    for (const auto& [section, keys] : sections_)
      for (const auto& [key, entry] : keys)
        if (!entry.consumed)
          throw config_error(path_ + ":" + std::to_string(entry.line) + ": unknown key '" + key +
                             "' in [" + section + "]");
  }

 private:
  Entry* find(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  double to_number(const std::string& section, const std::string& key, const std::string& raw) {
    try {
      std::size_t idx = 0;
      const double v = std::stod(raw, &idx);
      if (idx != raw.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw config_error(path_ + ": key '" + key + "' in [" + section + "] is not a number: '" +
                         raw + "'");
    }
  }

  const std::string& path_;
  SectionMap& sections_;
};

}  // namespace detail

// Parses and fully validates a run configuration. Throws config_error with
// the offending line or the violated model invariant named.
inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string raw_text = buf.str();

  auto sections = detail::parse_sections(path, raw_text);
  detail::Reader r(path, sections);

  Material mat{};
  mat.solid = {r.get_number("material.solid", "k"), r.get_number("material.solid", "alpha"),
               r.get_number("material.solid", "d")};
  mat.liquid = {r.get_number("material.liquid", "k"), r.get_number("material.liquid", "alpha"),
                r.get_number("material.liquid", "d")};
  mat.rho = r.get_number("material", "rho");
  mat.gamma = r.get_number("material", "gamma");

  const std::string dia_type = r.get_string("diagram", "type");
  auto diagram = [&]() -> PhaseDiagram {
    try {
      if (dia_type == "power_law") {
        return PowerLawDiagram(r.get_number("diagram", "T_A"), r.get_number("diagram", "T_B"),
                               r.get_number("diagram", "exponent_l"),
                               r.get_number("diagram", "exponent_s"));
      }
      if (dia_type == "tabulated") {
        const std::filesystem::path table =
            std::filesystem::path(path).parent_path() / r.get_string("diagram", "path");
        return load_tabulated_diagram(table.string());
      }
      throw config_error(path + ": [diagram] type must be 'power_law' or 'tabulated', got '" +
                         dia_type + "'");
    } catch (const std::invalid_argument& e) {
      throw config_error(path + ": [diagram] " + e.what());
    }
  }();

  const auto validation = diagram.validate();
  if (!validation.all_pass()) {
    for (const auto& c : validation.checks)
      if (!c.pass) throw config_error(path + ": [diagram] violates curve axiom '" + c.name + "'");
  }

  const double T0 = r.get_number("initial", "T0");
  const double C0 = r.get_number("initial", "C0");

  const std::string bc_type = r.get_string("boundary", "type");
  BoundaryCondition bc = [&]() -> BoundaryCondition {
    if (bc_type == "flux") return FluxBC{r.get_number("boundary", "q0")};
    if (bc_type == "convective")
      return ConvectiveBC{r.get_number("boundary", "h0"), r.get_number("boundary", "T_inf")};
    if (bc_type == "dirichlet") return DirichletBC{r.get_number("boundary", "T1")};
    throw config_error(path + ": [boundary] type must be 'flux', 'convective' or 'dirichlet', got '" +
                       bc_type + "'");
  }();

  RunConfig cfg{ProblemSpec{mat, std::move(diagram), T0, C0, bc}, SolverConfig{}, path, raw_text};

  if (r.has_section("solver")) {
    cfg.solver.tol_lambda = r.get_number_or("solver", "tol_lambda", cfg.solver.tol_lambda);
    cfg.solver.tol_residual = r.get_number_or("solver", "tol_residual", cfg.solver.tol_residual);
    cfg.solver.max_iterations = static_cast<int>(
        r.get_number_or("solver", "max_iterations", cfg.solver.max_iterations));
    cfg.solver.bracket_margin = r.get_number_or("solver", "bracket_margin", cfg.solver.bracket_margin);
  }

  r.reject_unconsumed();

  try {
    validate_spec(cfg.spec);
    cfg.solver.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(path + ": " + e.what());
  }
  return cfg;
}

}  // namespace alloystef::cli
