#ifndef SWCIP_EXPERIMENT_HPP
#define SWCIP_EXPERIMENT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "swcip/simulation.hpp"

namespace swcip {

enum class TestCase {
  Lake,
  Super,
  Sub,
  Trans,
  PerturbLake,
  PerturbSuper,
  PerturbSub,
  PerturbTrans
};

std::string to_string(TestCase test);
TestCase test_case_from_string(const std::string& name);
bool is_perturbation(TestCase test);
FlowRegime regime_of(TestCase test);

/// One experiment: the test selects domain setup, boundary data and the
/// default bathymetry/final time/perturbation amplitude; negative or empty
/// entries select the built-in defaults.
struct ExperimentConfig {
  TestCase test = TestCase::Lake;
  BasisFamily family = BasisFamily::LagrangeGaussLobatto;
  int degree = 4;
  std::vector<int> elems = {100};
  SpaceScheme space = SpaceScheme::HydrostaticSplit;
  StabKind stab = StabKind::TotalHeightJump;
  double delta1 = -1.0;
  double delta2 = -1.0;
  double eig_fix = 0.05;
  double cfl = -1.0;
  double t_final = -1.0;
  double g = 9.81;
  double friction = 0.0;
  double amplitude = -1.0;
  double eta_bar = 0.5;
  std::string bathymetry;  // "", "flat", "smooth", "c0"
  DecVariant integrator = DecVariant::GrowingNodes;
  bool steady_stop = true;  // steady runs may finish once machine-steady
  double wb_tolerance = 1e-11;
  std::string out;

  bool operator==(const ExperimentConfig&) const = default;

  double resolved_cfl() const;
  double resolved_tfinal() const;
  double resolved_amplitude() const;
  double resolved_delta1() const;
  double resolved_delta2() const;
  Bathymetry resolved_bathymetry() const;
  BasisSpec basis_spec() const { return {family, degree}; }
  SchemeConfig scheme_config() const;
};

// Sectioned key=value configuration text.
ExperimentConfig parse_config_text(const std::string& text);
std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig load_config_file(const std::string& path);

/// The boundary/initial data of the paper tests: domain (0,25), momenta
/// 24 / 4.42 / 1.53 and heights 2 for the three moving regimes.
struct TestData {
  double x_left = 0.0;
  double x_right = 25.0;
  double q_super = 24.0;
  double h_super_left = 2.0;
  double q_sub = 4.42;
  double h_sub_right = 2.0;
  double q_trans = 1.53;
};
TestData test_data();

/// Steady reference for a config (exact for frictionless regimes, the
/// friction ODE otherwise).
SteadyReference make_reference(const ExperimentConfig& config);

struct CaseResult {
  int n_elem = 0;
  double h = 0.0;
  ErrorNorms errors;
  RunStats stats;
};

/// Steady test: initialize from the reference, integrate to the final
/// time, measure L1 errors and optionally write solution + error CSVs.
CaseResult run_case(const ExperimentConfig& config, int n_elem = 0, bool write_output = true);

struct ConvergenceRow {
  int n_elem = 0;
  double h = 0.0;
  double err_H = 0.0;
  double order_H = 0.0;  // 0 on the first row
  double err_q = 0.0;
  double order_q = 0.0;
};

std::vector<ConvergenceRow> convergence_suite(const ExperimentConfig& config);

/// Least-squares slope of log2(err) against log2(h); rows below the
/// round-off floor are excluded.
double least_squares_order(const std::vector<ConvergenceRow>& rows, bool momentum = false,
                           double floor = 1e-12);

struct WbReport {
  ErrorNorms errors;  // H-error doubles as the eta-error at rest
  double tolerance = 0.0;
  bool pass = false;
  RunStats stats;
};

WbReport wb_check(const ExperimentConfig& config);

struct PerturbResult {
  double metric = 0.0;      // max |eta - eta_steady| outside the wave region
  double amplitude = 0.0;
  double wave_lo = 0.0;     // estimated reach of the physical perturbation
  double wave_hi = 0.0;
  RunStats stats;
};

PerturbResult perturbation_run(const ExperimentConfig& config);

// CSV emission (17 significant digits, deterministic row order).
void write_solution_csv(std::ostream& os, const Simulation& sim);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);
void write_convergence_dat(std::ostream& os, const std::vector<ConvergenceRow>& rows);

}  // namespace swcip

#endif
