#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "alloystef/phase_diagram.hpp"

using alloystef::PhaseDiagram;
using alloystef::PowerLawDiagram;
using alloystef::TabulatedDiagram;

namespace {
PhaseDiagram ref1() { return PowerLawDiagram(0.0, 1.0, 2.0, 1.0); }
}  // namespace

TEST_CASE("REF1 liquidus and solidus values") {
  const auto d = ref1();
  CHECK(d.liquidus(0.0) == 0.0);
  CHECK(d.liquidus(0.5) == Catch::Approx(0.25).margin(1e-15));
  CHECK(d.liquidus(1.0) == 1.0);
  CHECK(d.solidus(0.5) == Catch::Approx(0.5).margin(1e-15));
  CHECK(d.solidus(0.0) == 0.0);
  CHECK(d.solidus(0.25) == Catch::Approx(0.25).margin(1e-15));
  CHECK_THROWS_AS(d.liquidus(-0.1), std::domain_error);
  CHECK_THROWS_AS(d.solidus(1.1), std::domain_error);
}

TEST_CASE("REF1 inverses") {
  const auto d = ref1();
  CHECK(d.inv_liquidus(0.25) == Catch::Approx(0.5).margin(1e-12));
  CHECK(d.inv_liquidus(0.0) == 0.0);
  CHECK(d.inv_liquidus(1.0) == 1.0);
  CHECK(d.inv_solidus(0.25) == Catch::Approx(0.25).margin(1e-12));
  CHECK(d.inv_solidus(0.0) == 0.0);
  CHECK(d.inv_solidus(1.0) == 1.0);
  CHECK_THROWS_AS(d.inv_liquidus(-0.01), std::domain_error);
  CHECK_THROWS_AS(d.inv_solidus(1.01), std::domain_error);
}

TEST_CASE("inverse round trip on 100 sampled concentrations") {
  const auto d = ref1();
  const PhaseDiagram cubic = PowerLawDiagram(0.0, 1.0, 3.0, 1.5);
  for (int i = 1; i < 100; ++i) {
    const double c = i / 100.0;
    for (const auto* dia : {&d, &cubic}) {
      CHECK(std::fabs(dia->liquidus(dia->inv_liquidus(c)) - c) <= 1e-12);
      CHECK(std::fabs(dia->solidus(dia->inv_solidus(c)) - c) <= 1e-12);
    }
  }
}

TEST_CASE("T_0s below T_0l for interior concentrations") {
  const auto d = ref1();
  for (int i = 1; i < 50; ++i) {
    const double c = i / 50.0;
    if (c >= 1.0) break;
    CHECK(d.inv_solidus(c) < d.inv_liquidus(c));
  }
}

TEST_CASE("phi values for REF1, C0 = 0.25") {
  const auto d = ref1();
  const double C0 = 0.25;
  CHECK(d.phi_of(C0, 0.25) == Catch::Approx(1.0).margin(1e-13));
  CHECK(d.phi_of(C0, 0.3) == Catch::Approx(1.3125).margin(1e-13));
  CHECK(d.phi_of(C0, 0.4999) > 1e3);
  // pole at T_{0l} = 0.5
  CHECK_THROWS_AS(d.phi_of(C0, 0.5), std::domain_error);
  CHECK_THROWS_AS(d.phi_of(C0, 0.0), std::domain_error);
  CHECK_THROWS_AS(d.phi_of(C0, 1.0), std::domain_error);
}

TEST_CASE("phi restated as 1 + (f_s - C0)/(C0 - f_l)") {
  const auto d = ref1();
  const double C0 = 0.25;
  const double t0s = d.inv_solidus(C0);
  const double t0l = d.inv_liquidus(C0);
  for (int i = 0; i <= 200; ++i) {
    const double T = t0s + (t0l - 1e-6 - t0s) * i / 200.0;
    const double direct = d.phi_of(C0, T);
    const double restated = 1.0 + (d.solidus(T) - C0) / (C0 - d.liquidus(T));
    CHECK(std::fabs(direct - restated) <= 1e-13 * std::max(1.0, std::fabs(direct)));
  }
}

TEST_CASE("validate_diagram") {
  CHECK(ref1().validate().all_pass());

  const PhaseDiagram degenerate = PowerLawDiagram(0.0, 1.0, 2.0, 2.0);
  const auto v = degenerate.validate();
  CHECK_FALSE(v.all_pass());
  bool ordering_failed = false;
  for (const auto& c : v.checks)
    if (c.name == "liquidus_below_solidus_interior" && !c.pass) ordering_failed = true;
  CHECK(ordering_failed);

  const PhaseDiagram bad_knot = TabulatedDiagram({{0.0, 0.0, 0.0},
                                                  {0.5, 0.30, 0.45},
                                                  {0.7, 0.20, 0.60},
                                                  {1.0, 1.0, 1.0}});
  const auto vt = bad_knot.validate();
  CHECK_FALSE(vt.all_pass());
  bool mono_failed = false;
  for (const auto& c : vt.checks)
    if (c.name == "liquidus_strictly_increasing" && !c.pass) mono_failed = true;
  CHECK(mono_failed);
}

TEST_CASE("tabulated diagram interpolation and inverses") {
  const PhaseDiagram d = TabulatedDiagram({{0.0, 0.0, 0.0},
                                           {0.25, 0.07, 0.26},
                                           {0.5, 0.24, 0.52},
                                           {0.75, 0.55, 0.77},
                                           {1.0, 1.0, 1.0}});
  CHECK(d.validate().all_pass());
  CHECK(d.liquidus(0.25) == Catch::Approx(0.07).margin(1e-15));
  CHECK(d.liquidus(0.375) == Catch::Approx(0.155).margin(1e-15));
  CHECK(std::fabs(d.liquidus(d.inv_liquidus(0.3)) - 0.3) <= 1e-12);
  CHECK(std::fabs(d.solidus(d.inv_solidus(0.3)) - 0.3) <= 1e-12);
}

TEST_CASE("tabulated diagram file loading") {
  const std::string path = "test_diagram_table.txt";
  {
    std::ofstream out(path);
    out << "T C_l C_s\n";
    out << "0.0 0.0 0.0\n";
    out << "0.5 0.2 0.5\n";
    out << "1.0 1.0 1.0\n";
  }
  const PhaseDiagram d = alloystef::load_tabulated_diagram(path);
  CHECK(d.T_A() == 0.0);
  CHECK(d.T_B() == 1.0);
  CHECK(d.liquidus(0.5) == Catch::Approx(0.2).margin(1e-15));
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "T C_l C_s\n0.5 0.2 0.5\n0.1 0.0 0.0\n";
  }
  CHECK_THROWS_AS(alloystef::load_tabulated_diagram(path), alloystef::config_error);
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "temp cl cs\n0.0 0.0 0.0\n1.0 1.0 1.0\n";
  }
  CHECK_THROWS_AS(alloystef::load_tabulated_diagram(path), alloystef::config_error);
  std::remove(path.c_str());
}

TEST_CASE("constructor rejections") {
  CHECK_THROWS_AS(PowerLawDiagram(1.0, 0.0, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PowerLawDiagram(0.0, 1.0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TabulatedDiagram({{0.0, 0.0, 0.0}}), std::invalid_argument);
}
