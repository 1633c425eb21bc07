#pragma once

#include <stdexcept>
#include <string>

namespace alloystef {

// Input data fails an admissibility gate (solvable but rejected by the theory).
class admissibility_error : public std::runtime_error {
 public:
  explicit admissibility_error(const std::string& what) : std::runtime_error(what) {}
};

// Root finding could not locate or certify a solution.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration file / run setup problems (CLI exit code 4).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace alloystef
