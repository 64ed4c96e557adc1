#ifndef SWCIP_SIMULATION_HPP
#define SWCIP_SIMULATION_HPP

#include "swcip/dec.hpp"
#include "swcip/space.hpp"
#include "swcip/stabilization.hpp"
#include "swcip/steady.hpp"

namespace swcip {

/// Full scheme selection: space discretization, face stabilization,
/// physical constants, CFL number and time integrator.
struct SchemeConfig {
  SpaceScheme space = SpaceScheme::HydrostaticSplit;
  StabParams stab;
  PhysParams phys;
  double cfl = 0.1;
  DecVariant integrator = DecVariant::GrowingNodes;
  int dec_subintervals = 0;  // 0 -> basis degree
  int dec_iterations = 0;    // 0 -> subintervals + 1
};

struct RunOptions {
  /// Stop once per-step updates stagnate at round-off for a while; the
  /// state then equals the one at any later time.
  bool stop_when_steady = false;
  double steady_rtol = 1e-13;
  int steady_patience = 50;
  long max_steps = 500000000;
};

struct RunStats {
  long steps = 0;
  double time = 0.0;
  bool reached_steady = false;
};

/// Time-dependent solve of the semidiscrete scheme with strong boundary
/// conditions. Deterministic and single-threaded: repeated runs produce
/// bit-identical states.
class Simulation {
 public:
  Simulation(Mesh1D mesh, Basis basis, const Bathymetry& bathy, SchemeConfig config);

  const Mesh1D& mesh() const { return mesh_; }
  const Basis& basis() const { return basis_; }
  const DiscreteBathymetry& bathymetry() const { return bathy_; }
  const SchemeConfig& config() const { return config_; }

  void set_state(SolutionField state);
  const SolutionField& state() const { return state_; }
  double time() const { return time_; }

  void set_boundary(BoundaryCondition bc) { bc_ = bc; }

  /// Space residual plus stabilization for an arbitrary coefficient vector;
  /// the global flux is rebuilt from that vector whenever the scheme needs
  /// it.
  void residual(const SolutionField& c, SolutionField& out) const;

  RunStats run_to(double t_final, const RunOptions& options = {});

  /// Solution values at the DoF coordinates (coefficients for Lagrange
  /// bases, collocation values for Bernstein).
  SolutionField dof_values() const;

 private:
  Mesh1D mesh_;
  Basis basis_;
  DiscreteBathymetry bathy_;
  SchemeConfig config_;
  MassOperator mass_;
  BoundaryCondition bc_;
  SolutionField state_;
  double time_ = 0.0;
  bool needs_gflux_ = false;
  mutable GlobalFluxField gflux_;
  mutable SolutionField stab_buf_;
};

/// Interpolant of a steady reference on the mesh nodes; at rest states this
/// makes the discrete total height exactly constant.
SolutionField initialize_from_reference(const Mesh1D& mesh, const Basis& basis,
                                        const SteadyReference& ref);

}  // namespace swcip

#endif
