#include "swcip/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swcip {

Simulation::Simulation(Mesh1D mesh, Basis basis, const Bathymetry& bathy, SchemeConfig config)
    : mesh_(std::move(mesh)),
      basis_(std::move(basis)),
      bathy_(discretize_bathymetry(mesh_, basis_, bathy)),
      config_(config),
      mass_(mesh_, basis_) {  // MassOperator copies; Simulation stays movable
  config_.phys.validate();
  if (config_.dec_subintervals == 0) config_.dec_subintervals = basis_.degree();
  if (config_.dec_iterations == 0) config_.dec_iterations = config_.dec_subintervals + 1;
  needs_gflux_ = config_.space == SpaceScheme::GlobalFlux ||
                 config_.stab.kind == StabKind::GlobalFluxJump;
  state_.assign(mesh_.dof_count(), Vec2{1.0, 0.0});
}

void Simulation::set_state(SolutionField state) {
  if (static_cast<int>(state.size()) != mesh_.dof_count())
    throw std::invalid_argument("simulation: state size does not match the mesh");
  state_ = std::move(state);
  time_ = 0.0;
}

void Simulation::residual(const SolutionField& c, SolutionField& out) const {
  const GlobalFluxField* gf = nullptr;
  if (needs_gflux_) {
    gflux_ = compute_global_flux(mesh_, basis_, c, bathy_, config_.phys);
    gf = &gflux_;
  }
  assemble_space_residual(config_.space, mesh_, basis_, c, bathy_, config_.phys, out, gf);
  assemble_stabilization(config_.stab, mesh_, basis_, c, bathy_, config_.phys, gf, stab_buf_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += stab_buf_[i];
}

RunStats Simulation::run_to(double t_final, const RunOptions& options) {
  RunStats stats;
  stats.time = time_;
  if (t_final <= time_) return stats;

  const DecConfig dec{config_.dec_subintervals, config_.dec_iterations, config_.integrator};
  const ResidualFn fn = [this](const SolutionField& c, SolutionField& out) { residual(c, out); };

  int quiet_steps = 0;
  while (time_ < t_final && stats.steps < options.max_steps) {
    double dt = compute_dt(config_.cfl, mesh_, basis_, state_, config_.phys);
    if (time_ + dt >= t_final) dt = t_final - time_;
    SolutionField next = dec_step(state_, dt, fn, dec, mass_, bc_);

    if (options.stop_when_steady) {
      double diff = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < next.size(); ++i) {
        diff = std::max({diff, std::abs(next[i][0] - state_[i][0]),
                         std::abs(next[i][1] - state_[i][1])});
        scale = std::max({scale, std::abs(next[i][0]), std::abs(next[i][1])});
      }
      quiet_steps = (diff <= options.steady_rtol * scale) ? quiet_steps + 1 : 0;
    }

    state_ = std::move(next);
    time_ += dt;
    ++stats.steps;
    if (options.stop_when_steady && quiet_steps >= options.steady_patience) {
      stats.reached_steady = true;
      break;
    }
  }
  stats.time = time_;
  return stats;
}

SolutionField Simulation::dof_values() const { return nodal_values(mesh_, basis_, state_); }

SolutionField initialize_from_reference(const Mesh1D& mesh, const Basis& basis,
                                        const SteadyReference& ref) {
  return interpolate_state(mesh, basis, ref.sampler());
}

}  // namespace swcip
