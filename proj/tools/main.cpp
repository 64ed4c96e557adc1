// Command-line front end: steady runs, convergence studies, lake-at-rest
// checks and perturbation experiments on the 1D shallow-water solver.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swcip/experiment.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string test, basis_name, scheme, stab, integrator, bathymetry, out;
  int degree = 0;
  std::string elems;
  double cfl = -1.0, tfinal = -1.0, friction = -1.0, delta1 = -1.0, delta2 = -1.0;
  double amp = -1.0, g = -1.0, eta = -1.0, tol = -1.0;
  int steady_stop = -1;
};

void add_common_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--config", o.config_path, "configuration file (flags override its values)");
  cmd->add_option("--test", o.test, "lake|super|sub|trans|perturb-lake|perturb-super|perturb-sub|perturb-trans");
  cmd->add_option("--basis", o.basis_name, "basis family: b|p|pgl");
  cmd->add_option("--degree", o.degree, "polynomial degree 1..4");
  cmd->add_option("--elems", o.elems, "element count, or comma-separated list for converge");
  cmd->add_option("--scheme", o.scheme, "space discretization: nonwb|wbhs|wbgf");
  cmd->add_option("--stab", o.stab, "stabilization: jc|jt|je|jr|jg");
  cmd->add_option("--cfl", o.cfl, "CFL number");
  cmd->add_option("--tfinal", o.tfinal, "final time");
  cmd->add_option("--friction", o.friction, "Manning friction coefficient");
  cmd->add_option("--delta1", o.delta1, "first-derivative penalty coefficient");
  cmd->add_option("--delta2", o.delta2, "second-derivative penalty coefficient (jc/jt)");
  cmd->add_option("--amp", o.amp, "perturbation amplitude");
  cmd->add_option("--out", o.out, "output path base (.csv files)");
  cmd->add_option("--g", o.g, "gravitational acceleration");
  cmd->add_option("--eta", o.eta, "lake-at-rest total height");
  cmd->add_option("--bathy", o.bathymetry, "bathymetry override: flat|smooth|c0");
  cmd->add_option("--integrator", o.integrator, "time integrator: bdec|bdecu");
  cmd->add_option("--tol", o.tol, "wb-check pass threshold");
  cmd->add_option("--steady-stop", o.steady_stop, "1: finish steady runs early once machine-steady");
}

swcip::ExperimentConfig build_config(const CliOptions& o) {
  swcip::ExperimentConfig c;
  if (!o.config_path.empty()) c = swcip::load_config_file(o.config_path);
  if (!o.test.empty()) c.test = swcip::test_case_from_string(o.test);
  if (!o.basis_name.empty()) {
    if (o.basis_name == "b")
      c.family = swcip::BasisFamily::Bernstein;
    else if (o.basis_name == "p")
      c.family = swcip::BasisFamily::LagrangeEquispaced;
    else if (o.basis_name == "pgl")
      c.family = swcip::BasisFamily::LagrangeGaussLobatto;
    else
      throw CLI::ValidationError("--basis", "expected b|p|pgl");
  }
  if (o.degree > 0) c.degree = o.degree;
  if (!o.elems.empty()) {
    c.elems.clear();
    std::string item;
    std::istringstream list(o.elems);
    while (std::getline(list, item, ',')) c.elems.push_back(std::stoi(item));
  }
  if (!o.scheme.empty()) {
    if (o.scheme == "nonwb")
      c.space = swcip::SpaceScheme::NonWellBalanced;
    else if (o.scheme == "wbhs")
      c.space = swcip::SpaceScheme::HydrostaticSplit;
    else if (o.scheme == "wbgf")
      c.space = swcip::SpaceScheme::GlobalFlux;
    else
      throw CLI::ValidationError("--scheme", "expected nonwb|wbhs|wbgf");
  }
  if (!o.stab.empty()) {
    if (o.stab == "jc")
      c.stab = swcip::StabKind::ConservedJump;
    else if (o.stab == "jt")
      c.stab = swcip::StabKind::TotalHeightJump;
    else if (o.stab == "je")
      c.stab = swcip::StabKind::EntropyJump;
    else if (o.stab == "jr")
      c.stab = swcip::StabKind::ResidualJump;
    else if (o.stab == "jg")
      c.stab = swcip::StabKind::GlobalFluxJump;
    else
      throw CLI::ValidationError("--stab", "expected jc|jt|je|jr|jg");
  }
  if (o.cfl >= 0.0) c.cfl = o.cfl;
  if (o.tfinal >= 0.0) c.t_final = o.tfinal;
  if (o.friction >= 0.0) c.friction = o.friction;
  if (o.delta1 >= 0.0) c.delta1 = o.delta1;
  if (o.delta2 >= 0.0) c.delta2 = o.delta2;
  if (o.amp >= 0.0) c.amplitude = o.amp;
  if (o.g > 0.0) c.g = o.g;
  if (o.eta > 0.0) c.eta_bar = o.eta;
  if (!o.bathymetry.empty()) c.bathymetry = o.bathymetry;
  if (!o.integrator.empty()) {
    if (o.integrator == "bdec")
      c.integrator = swcip::DecVariant::FixedNodes;
    else if (o.integrator == "bdecu")
      c.integrator = swcip::DecVariant::GrowingNodes;
    else
      throw CLI::ValidationError("--integrator", "expected bdec|bdecu");
  }
  if (o.tol > 0.0) c.wb_tolerance = o.tol;
  if (o.steady_stop >= 0) c.steady_stop = o.steady_stop != 0;
  if (!o.out.empty()) c.out = o.out;
  return c;
}

std::string describe(const swcip::ExperimentConfig& c) {
  std::ostringstream os;
  os << to_string(c.test) << " " << to_string(c.family) << c.degree << " "
     << to_string(c.space) << "+" << to_string(c.stab);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D shallow-water experiments: well-balanced CG schemes with "
               "interior-penalty stabilization and deferred-correction time stepping"};
  app.require_subcommand(1);

  CliOptions runo, convo, wbo, perto;
  CLI::App* run = app.add_subcommand("run", "integrate a steady test and report L1 errors");
  add_common_flags(run, runo);
  CLI::App* conv = app.add_subcommand("converge", "mesh-refinement study over --elems list");
  add_common_flags(conv, convo);
  CLI::App* wb = app.add_subcommand("wb-check", "lake-at-rest preservation check");
  add_common_flags(wb, wbo);
  CLI::App* pert = app.add_subcommand("perturb", "evolve a small steady-state perturbation");
  add_common_flags(pert, perto);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto config = build_config(runo);
      const auto result = swcip::run_case(config);
      std::printf("%s  elems=%d  steps=%ld  t=%.6g\n", describe(config).c_str(), result.n_elem,
                  result.stats.steps, result.stats.time);
      std::printf("errH_L1=%.6e  errq_L1=%.6e  errH_Linf=%.6e  errq_Linf=%.6e\n",
                  result.errors.l1_H, result.errors.l1_q, result.errors.linf_H,
                  result.errors.linf_q);
    } else if (conv->parsed()) {
      const auto config = build_config(convo);
      const auto rows = swcip::convergence_suite(config);
      std::printf("%s\n", describe(config).c_str());
      std::printf("%8s %12s %14s %8s %14s %8s\n", "n_elem", "h", "errH", "orderH", "errq",
                  "orderq");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (i == 0)
          std::printf("%8d %12.6g %14.6e %8s %14.6e %8s\n", r.n_elem, r.h, r.err_H, "-", r.err_q,
                      "-");
        else
          std::printf("%8d %12.6g %14.6e %8.3f %14.6e %8.3f\n", r.n_elem, r.h, r.err_H, r.order_H,
                      r.err_q, r.order_q);
      }
    } else if (wb->parsed()) {
      const auto config = build_config(wbo);
      const auto report = swcip::wb_check(config);
      std::printf("%s  L1(eta-etabar)=%.6e  L1(q)=%.6e  Linf(eta-etabar)=%.6e  Linf(q)=%.6e\n",
                  describe(config).c_str(), report.errors.l1_H, report.errors.l1_q,
                  report.errors.linf_H, report.errors.linf_q);
      std::printf("%s (threshold %.3e)\n", report.pass ? "PASS" : "FAIL", report.tolerance);
      if (!report.pass) return 2;
    } else if (pert->parsed()) {
      const auto config = build_config(perto);
      const auto result = swcip::perturbation_run(config);
      std::printf("%s  A=%.3e  quiet region outside [%.4f, %.4f]\n", describe(config).c_str(),
                  result.amplitude, result.wave_lo, result.wave_hi);
      std::printf("quiet-region metric max|eta - eta_s| = %.6e  (%.4f x A)\n", result.metric,
                  result.metric / result.amplitude);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
