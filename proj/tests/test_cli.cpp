#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "alloystef/cli.hpp"

using namespace alloystef;

namespace {

const char* ref1_flux_cfg = R"([material.solid]
k = 1.0
alpha = 1.0
d = 1.0
[material.liquid]
k = 1.0
alpha = 1.0
d = 1.0
[material]
rho = 1.0
gamma = 1.0
[diagram]
type = power_law
T_A = 0.0
T_B = 1.0
exponent_l = 2.0
exponent_s = 1.0
[initial]
T0 = 0.8
C0 = 0.25
[boundary]
type = flux
q0 = 0.25
)";

std::string write_temp(const std::string& name, const std::string& text) {
  std::ofstream out(name, std::ios::binary);
  out << text;
  return name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string patched(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("load_config parses the reference scenario") {
  const auto path = write_temp("cfg_ref1.cfg", ref1_flux_cfg);
  const auto cfg = cli::load_config(path);
  CHECK(cfg.spec.kind() == BcKind::flux);
  CHECK(std::get<FluxBC>(cfg.spec.bc).q0 == 0.25);
  CHECK(cfg.spec.T0 == 0.8);
  CHECK(cfg.spec.material.rho == 1.0);
  CHECK(cfg.solver.tol_lambda == 1e-12);
  CHECK(cfg.raw_text == ref1_flux_cfg);
  std::remove(path.c_str());
}

TEST_CASE("load_config honors a [solver] section") {
  const auto path = write_temp("cfg_solver.cfg",
                               std::string(ref1_flux_cfg) + "[solver]\ntol_lambda = 1e-11\n");
  const auto cfg = cli::load_config(path);
  CHECK(cfg.solver.tol_lambda == 1e-11);
  std::remove(path.c_str());
}

TEST_CASE("load_config rejects invariant violations by name") {
  const auto t0 = write_temp("cfg_bad_t0.cfg", patched(ref1_flux_cfg, "T0 = 0.8", "T0 = 1.0"));
  CHECK_THROWS_WITH(cli::load_config(t0), Catch::Matchers::ContainsSubstring("T_A < T0 < T_B"));
  std::remove(t0.c_str());

  const auto c0 = write_temp("cfg_bad_c0.cfg", patched(ref1_flux_cfg, "C0 = 0.25", "C0 = 0.7"));
  CHECK_THROWS_WITH(cli::load_config(c0), Catch::Matchers::ContainsSubstring("start liquid"));
  std::remove(c0.c_str());

  const auto dia = write_temp("cfg_bad_dia.cfg",
                              patched(ref1_flux_cfg, "exponent_l = 2.0", "exponent_l = 1.0"));
  CHECK_THROWS_WITH(cli::load_config(dia), Catch::Matchers::ContainsSubstring("curve axiom"));
  std::remove(dia.c_str());
}

TEST_CASE("load_config reports parse problems with line numbers") {
  const auto noeq = write_temp("cfg_noeq.cfg", "[material]\nrho 1.0\n");
  CHECK_THROWS_WITH(cli::load_config(noeq), Catch::Matchers::ContainsSubstring(":2:"));
  std::remove(noeq.c_str());

  const auto unknown = write_temp("cfg_unknown.cfg",
                                  patched(ref1_flux_cfg, "q0 = 0.25", "q0 = 0.25\nbogus = 1"));
  CHECK_THROWS_WITH(cli::load_config(unknown), Catch::Matchers::ContainsSubstring("unknown key"));
  std::remove(unknown.c_str());

  const auto dup = write_temp("cfg_dup.cfg", patched(ref1_flux_cfg, "rho = 1.0", "rho = 1.0\nrho = 2.0"));
  CHECK_THROWS_WITH(cli::load_config(dup), Catch::Matchers::ContainsSubstring("duplicate key"));
  std::remove(dup.c_str());

  const auto nan = write_temp("cfg_nan.cfg", patched(ref1_flux_cfg, "q0 = 0.25", "q0 = fast"));
  CHECK_THROWS_WITH(cli::load_config(nan), Catch::Matchers::ContainsSubstring("not a number"));
  std::remove(nan.c_str());

  CHECK_THROWS_AS(cli::load_config("no_such_file.cfg"), config_error);
}

TEST_CASE("profile csv schema") {
  ProfileSample p{};
  p.t = 1.0;
  p.x = 0.1;
  p.region = Region::liquid;
  p.T = 0.5;
  p.C = 0.25;
  p.C_solid_side = 0.25;
  const std::string csv = cli::profile_csv({p});
  CHECK(csv == "t,x,region,T,C\n1,0.10000000000000001,liquid,0.5,0.25\n");
  CHECK(csv.find('\r') == std::string::npos);
  CHECK_THROWS_AS(cli::profile_csv({}), std::domain_error);
}

TEST_CASE("sweep csv schema leaves unsolved cells empty") {
  cli::SweepRow solved{"q0", 0.25, true, 0.0552, 0.4764, 0.4489};
  cli::SweepRow unsolved{"q0", 0.1, false, std::nullopt, std::nullopt, std::nullopt};
  const std::string csv = cli::sweep_csv({solved, unsolved});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "param,value,admissible,front_coefficient,T_k,T_fixed_face");
  std::getline(in, line);
  CHECK(line.starts_with("q0,0.25,true,"));
  std::getline(in, line);
  CHECK(line == "q0,0.10000000000000001,false,,,");
  CHECK_THROWS_AS(cli::sweep_csv({}), std::domain_error);
}

TEST_CASE("run_command exit codes through the library surface") {
  const auto path = write_temp("cfg_run.cfg", ref1_flux_cfg);
  const auto cfg = cli::load_config(path);

  cli::CommandParams p;
  p.out_path = "out_check.json";
  CHECK(cli::run_command(cfg, "check", p) == cli::exit_ok);

  // inadmissible q0: check exits 2 and solve exits 2
  const auto bad_path = write_temp("cfg_run_bad.cfg", patched(ref1_flux_cfg, "q0 = 0.25", "q0 = 0.169"));
  const auto bad_cfg = cli::load_config(bad_path);
  CHECK(cli::run_command(bad_cfg, "check", p) == cli::exit_inadmissible);
  p.out_path = "out_solve.json";
  CHECK(cli::run_command(bad_cfg, "solve", p) == cli::exit_inadmissible);

  // equivalence needs flux or convective
  const auto dir_path = write_temp(
      "cfg_run_dir.cfg",
      patched(ref1_flux_cfg, "type = flux\nq0 = 0.25", "type = dirichlet\nT1 = 0.3"));
  const auto dir_cfg = cli::load_config(dir_path);
  p.out_path = "out_eq.json";
  CHECK(cli::run_command(dir_cfg, "equivalence", p) == cli::exit_config_error);

  // bad sweep parameters
  cli::CommandParams sweep;
  sweep.sweep_param = "T1";
  sweep.out_path = "out_sweep.csv";
  CHECK(cli::run_command(cfg, "sweep", sweep) == cli::exit_config_error);

  CHECK(cli::run_command(cfg, "no_such_command", p) == cli::exit_config_error);

  for (const char* f : {"cfg_run.cfg", "cfg_run_bad.cfg", "cfg_run_dir.cfg", "out_check.json",
                        "out_solve.json", "out_eq.json", "out_sweep.csv"})
    std::remove(f);
}

TEST_CASE("check writes the gate bounds into the JSON summary") {
  const auto path = write_temp("cfg_json.cfg", ref1_flux_cfg);
  const auto cfg = cli::load_config(path);
  cli::CommandParams p;
  p.out_path = "out_json_check.json";
  REQUIRE(cli::run_command(cfg, "check", p) == cli::exit_ok);
  const auto j = nlohmann::json::parse(read_file("out_json_check.json"));
  CHECK(std::fabs(j["admissibility"]["lower_bound"].get<double>() - 0.3 / std::sqrt(M_PI)) <= 1e-12);
  CHECK(std::fabs(j["admissibility"]["upper_bound"].get<double>() - 0.55 / std::sqrt(M_PI)) <= 1e-12);
  CHECK(j["admissibility"]["admissible"].get<bool>());
  CHECK(j["artifact"]["version"].get<std::string>() == std::string(version));
  CHECK(j["config"]["text"].get<std::string>() == ref1_flux_cfg);
  std::remove(path.c_str());
  std::remove("out_json_check.json");
}

TEST_CASE("verify success implies solve success for the same config") {
  const auto path = write_temp("cfg_imp.cfg", ref1_flux_cfg);
  const auto cfg = cli::load_config(path);
  cli::CommandParams p;
  p.out_path = "out_imp_verify.json";
  const int verify_code = cli::run_command(cfg, "verify", p);
  p.out_path = "out_imp_solve.json";
  const int solve_code = cli::run_command(cfg, "solve", p);
  CHECK(verify_code == cli::exit_ok);
  CHECK(solve_code == cli::exit_ok);
  for (const char* f : {"cfg_imp.cfg", "out_imp_verify.json", "out_imp_solve.json"}) std::remove(f);
}

TEST_CASE("outputs are byte identical across runs of the same config") {
  const auto path = write_temp("cfg_det.cfg", ref1_flux_cfg);
  const auto cfg = cli::load_config(path);
  cli::CommandParams p;
  p.out_path = "out_det_a.json";
  cli::run_command(cfg, "solve", p);
  p.out_path = "out_det_b.json";
  cli::run_command(cfg, "solve", p);
  CHECK(read_file("out_det_a.json") == read_file("out_det_b.json"));

  p.out_path = "out_det_a.csv";
  cli::run_command(cfg, "profile", p);
  p.out_path = "out_det_b.csv";
  cli::run_command(cfg, "profile", p);
  const std::string csv = read_file("out_det_a.csv");
  CHECK(csv == read_file("out_det_b.csv"));
  CHECK(!csv.empty());
  CHECK(csv.find('\r') == std::string::npos);
  for (const char* f : {"cfg_det.cfg", "out_det_a.json", "out_det_b.json", "out_det_a.csv",
                        "out_det_b.csv"})
    std::remove(f);
}

#ifdef ALLOYSTEF_CLI_PATH
namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ALLOYSTEF_CLI_PATH) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("the installed binary honors the exit-code contract") {
  write_temp("itest_ref1.cfg", ref1_flux_cfg);
  write_temp("itest_bad.cfg", patched(ref1_flux_cfg, "q0 = 0.25", "q0 = 0.169"));
  write_temp("itest_parse.cfg", "[material\nk = 1\n");

  CHECK(run_cli("check --config itest_ref1.cfg") == 0);
  CHECK(run_cli("solve --config itest_ref1.cfg") == 0);
  CHECK(run_cli("check --config itest_bad.cfg") == 2);
  CHECK(run_cli("solve --config itest_bad.cfg") == 2);
  CHECK(run_cli("solve --config itest_parse.cfg") == 4);
  CHECK(run_cli("solve --config itest_missing.cfg") == 4);
  CHECK(run_cli("solve") == 4);  // missing --config
  CHECK(run_cli("verify --config itest_ref1.cfg --out itest_verify.json") == 0);
  CHECK(run_cli("equivalence --config itest_ref1.cfg --out itest_eq.json") == 0);

  SECTION("profile grid contract: nx=4 plus interface row under one header") {
    CHECK(run_cli("profile --config itest_ref1.cfg --times 1 --xmax 1 --nx 4 --out itest_p.csv") == 0);
    const std::string csv = read_file("itest_p.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    CHECK(csv.starts_with("t,x,region,T,C\n"));
    CHECK(csv.find("interface") != std::string::npos);
    std::remove("itest_p.csv");
  }

  SECTION("sweep marks rows outside the admissible interval") {
    CHECK(run_cli("sweep --config itest_ref1.cfg --param q0 --from 0.10 --to 0.40 --steps 31 "
                  "--out itest_s.csv") == 0);
    std::ifstream in("itest_s.csv");
    std::string line;
    std::getline(in, line);
    int admissible = 0, inadmissible = 0;
    double prev_coef = -1.0;
    bool coef_increasing = true;
    while (std::getline(in, line)) {
      std::istringstream row(line);
      std::string param, value, adm, coef;
      std::getline(row, param, ',');
      std::getline(row, value, ',');
      std::getline(row, adm, ',');
      std::getline(row, coef, ',');
      if (adm == "true") {
        ++admissible;
        const double c = std::stod(coef);
        if (c <= prev_coef) coef_increasing = false;
        prev_coef = c;
        CHECK(std::stod(value) > 0.16925687506434294);
        CHECK(std::stod(value) < 0.31030427095128206);
      } else {
        ++inadmissible;
        CHECK(coef.empty());
      }
    }
    CHECK(admissible + inadmissible == 31);
    CHECK(admissible > 0);
    CHECK(inadmissible > 0);
    CHECK(coef_increasing);
    std::remove("itest_s.csv");
  }

  for (const char* f : {"itest_ref1.cfg", "itest_bad.cfg", "itest_parse.cfg", "cli_stdout.txt",
                        "cli_stderr.txt", "itest_verify.json", "itest_eq.json"})
    std::remove(f);
}

TEST_CASE("ALLOYSTEF_LOG turns on progress diagnostics on stderr") {
  write_temp("itest_log.cfg", ref1_flux_cfg);
  const std::string base = std::string(ALLOYSTEF_CLI_PATH) +
                           " solve --config itest_log.cfg > /dev/null 2> itest_log_err.txt";
  REQUIRE(WEXITSTATUS(std::system(("ALLOYSTEF_LOG=debug " + base).c_str())) == 0);
  CHECK(read_file("itest_log_err.txt").find("alloystef:") != std::string::npos);
  REQUIRE(WEXITSTATUS(std::system(("ALLOYSTEF_LOG= " + base).c_str())) == 0);
  CHECK(read_file("itest_log_err.txt").empty());
  std::remove("itest_log.cfg");
  std::remove("itest_log_err.txt");
}
#endif
