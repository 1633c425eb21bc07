#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alloystef/alloystef.hpp"

namespace {

struct Cli {
  std::string config_path;
  alloystef::cli::CommandParams params;
  std::string times_csv = "1";
  double x_max = 0.0;
};

void add_common(CLI::App* sub, Cli& c) {
  sub->add_option("--config", c.config_path, "run configuration file")->required();
  sub->add_option("--out", c.params.out_path, "output path (default: standard output)");
}

std::vector<double> parse_times(const std::string& csv) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    std::size_t idx = 0;
    const double v = std::stod(token, &idx);
    if (idx != token.size()) throw alloystef::config_error("--times: bad number '" + token + "'");
    out.push_back(v);
  }
  if (out.empty()) throw alloystef::config_error("--times: expected a comma-separated list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity solutions of two-phase binary-alloy solidification"};
  app.require_subcommand(1);

  Cli c;
  std::string command;
  for (const char* name : {"check", "solve", "profile", "verify", "equivalence", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub, c);
    if (std::string(name) == "profile") {
      sub->add_option("--times", c.times_csv, "comma-separated sample times (default 1)");
      sub->add_option("--xmax", c.x_max, "profile window (default: 8 x front position)");
      sub->add_option("--nx", c.params.n_x, "grid points per time (default 50)");
    }
    if (std::string(name) == "sweep") {
      sub->add_option("--param", c.params.sweep_param, "q0 or h0")->required();
      sub->add_option("--from", c.params.sweep_from, "range start")->required();
      sub->add_option("--to", c.params.sweep_to, "range end")->required();
      sub->add_option("--steps", c.params.sweep_steps, "number of points")->required();
    }
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : alloystef::cli::exit_config_error;
  }

  try {
    c.params.times = parse_times(c.times_csv);
    if (c.x_max > 0.0) c.params.x_max = c.x_max;
    alloystef::cli::log("loading " + c.config_path);
    const auto cfg = alloystef::cli::load_config(c.config_path);
    return alloystef::cli::run_command(cfg, command, c.params);
  } catch (const alloystef::config_error& e) {
    std::cerr << "alloystef: configuration error: " << e.what() << "\n";
    return alloystef::cli::exit_config_error;
  } catch (const std::exception& e) {
    std::cerr << "alloystef: " << e.what() << "\n";
    return alloystef::cli::exit_config_error;
  }
}
