#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "swcip/experiment.hpp"

using namespace swcip;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("test-case names round trip") {
  for (TestCase t : {TestCase::Lake, TestCase::Super, TestCase::Sub, TestCase::Trans,
                     TestCase::PerturbLake, TestCase::PerturbSuper, TestCase::PerturbSub,
                     TestCase::PerturbTrans})
    CHECK(test_case_from_string(to_string(t)) == t);
  CHECK_THROWS_AS(test_case_from_string("dam-break"), std::invalid_argument);
}

TEST_CASE("per-test defaults mirror the experiment setups") {
  ExperimentConfig c;
  c.test = TestCase::Lake;
  CHECK(c.resolved_tfinal() == 10.0);
  CHECK(c.resolved_bathymetry().kind() == BathymetryKind::C0Parabola);
  c.test = TestCase::Super;
  CHECK(c.resolved_tfinal() == 100.0);
  CHECK(c.resolved_bathymetry().kind() == BathymetryKind::SmoothBump);
  c.test = TestCase::PerturbLake;
  CHECK(c.resolved_tfinal() == 1.5);
  CHECK(c.resolved_amplitude() == 5e-5);
  c.test = TestCase::PerturbSuper;
  CHECK(c.resolved_tfinal() == 1.0);
  CHECK(c.resolved_amplitude() == 5e-5);
  c.test = TestCase::PerturbSub;
  CHECK(c.resolved_amplitude() == 5e-4);
  CHECK(c.resolved_bathymetry().kind() == BathymetryKind::C0Parabola);

  c.degree = 4;
  CHECK(c.resolved_cfl() == 0.05);
  c.degree = 2;
  CHECK(c.resolved_cfl() == 0.1);
  CHECK(c.resolved_delta1() == 0.3);
  CHECK(c.resolved_delta2() == 0.2);
  c.cfl = 0.07;
  CHECK(c.resolved_cfl() == 0.07);
}

TEST_CASE("configuration text round trip is idempotent") {
  ExperimentConfig c;
  c.test = TestCase::PerturbSub;
  c.family = BasisFamily::Bernstein;
  c.degree = 3;
  c.elems = {25, 50, 100};
  c.space = SpaceScheme::GlobalFlux;
  c.stab = StabKind::ResidualJump;
  c.delta1 = 0.123;
  c.cfl = 0.07;
  c.t_final = 2.25;
  c.friction = 0.03;
  c.amplitude = 1e-4;
  c.bathymetry = "c0";
  c.integrator = DecVariant::FixedNodes;
  c.steady_stop = false;
  c.out = "results/perturb";

  const std::string text = serialize_config(c);
  const ExperimentConfig parsed = parse_config_text(text);
  CHECK(parsed == c);
  CHECK(serialize_config(parsed) == text);

  // defaults survive the round trip too
  const ExperimentConfig d;
  CHECK(parse_config_text(serialize_config(d)) == d);
}

TEST_CASE("configuration rejects unknown entries") {
  CHECK_THROWS_AS(parse_config_text("[case]\nflux = secret\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("[case]\ntest\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("[case\ntest = lake\n"), std::invalid_argument);
  CHECK_NOTHROW(parse_config_text("# comment only\n\n"));
}

TEST_CASE("least-squares order on synthetic rows") {
  std::vector<ConvergenceRow> rows;
  for (int level = 0; level < 4; ++level) {
    ConvergenceRow r;
    r.n_elem = 25 << level;
    r.h = 1.0 / r.n_elem;
    r.err_H = 3.0 * std::pow(r.h, 2.5);
    r.err_q = 1.5 * std::pow(r.h, 4.0);
    rows.push_back(r);
  }
  CHECK(least_squares_order(rows) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(least_squares_order(rows, true) == doctest::Approx(4.0).epsilon(1e-12));

  // round-off-floored rows are dropped from the fit
  rows[3].err_H = 5e-15;
  CHECK(least_squares_order(rows) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("quick lake run: well-balanced pass and non-balanced fail") {
  ExperimentConfig c;
  c.test = TestCase::Lake;
  c.family = BasisFamily::LagrangeGaussLobatto;
  c.degree = 2;
  // element count keeps the bathymetry kinks on element boundaries, so the
  // nodal initialization represents the rest state exactly
  c.elems = {25};
  c.space = SpaceScheme::HydrostaticSplit;
  c.stab = StabKind::TotalHeightJump;
  c.t_final = 0.5;

  const WbReport good = wb_check(c);
  CHECK(good.pass);
  CHECK(good.errors.l1_H <= 1e-11);
  CHECK(good.errors.l1_q <= 1e-11);

  ExperimentConfig bad = c;
  bad.space = SpaceScheme::NonWellBalanced;
  bad.stab = StabKind::ConservedJump;
  const WbReport report = wb_check(bad);
  CHECK_FALSE(report.pass);
  CHECK(report.errors.l1_H > 1e-6);
}

TEST_CASE("run_case writes deterministic solution and error files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "swcip_test_csv";
  fs::remove_all(dir);

  ExperimentConfig c;
  c.test = TestCase::Lake;
  c.family = BasisFamily::Bernstein;
  c.degree = 2;
  c.elems = {8};
  c.space = SpaceScheme::GlobalFlux;
  c.stab = StabKind::GlobalFluxJump;
  c.t_final = 0.2;
  c.out = (dir / "case").string();

  const CaseResult r1 = run_case(c);
  const std::string sol1 = slurp((dir / "case.csv").string());
  const std::string err1 = slurp((dir / "case_errors.csv").string());
  const CaseResult r2 = run_case(c);
  const std::string sol2 = slurp((dir / "case.csv").string());
  const std::string err2 = slurp((dir / "case_errors.csv").string());

  CHECK(sol1 == sol2);
  CHECK(err1 == err2);
  CHECK(r1.errors.l1_H == r2.errors.l1_H);

  // schema: header plus one row per DoF, 5 columns
  std::istringstream in(sol1);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,H,q,eta,B");
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
    ++rows;
  }
  CHECK(rows == 8 * 2 + 1);

  CHECK(err1.rfind("errH_L1,errq_L1\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("perturbation runs: balanced schemes keep the quiet region quiet") {
  ExperimentConfig c;
  c.test = TestCase::PerturbLake;
  c.family = BasisFamily::LagrangeGaussLobatto;
  c.degree = 2;
  c.elems = {24};
  c.space = SpaceScheme::HydrostaticSplit;
  c.stab = StabKind::ResidualJump;
  c.t_final = 0.4;

  const PerturbResult wb = perturbation_run(c);
  CHECK(wb.metric <= 0.05 * wb.amplitude);
  CHECK(wb.amplitude == 5e-5);
  CHECK(wb.wave_lo > 0.0);
  CHECK(wb.wave_hi < 25.0);

  ExperimentConfig bad = c;
  bad.space = SpaceScheme::NonWellBalanced;
  bad.stab = StabKind::ConservedJump;
  const PerturbResult nonwb = perturbation_run(bad);
  CHECK(nonwb.metric > wb.metric * 10.0);
}

TEST_CASE("run_case rejects perturbation tests") {
  ExperimentConfig c;
  c.test = TestCase::PerturbLake;
  CHECK_THROWS_AS(run_case(c), std::invalid_argument);
}

TEST_SUITE_END();
