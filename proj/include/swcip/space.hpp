#ifndef SWCIP_SPACE_HPP
#define SWCIP_SPACE_HPP

#include <array>
#include <string>
#include <vector>

#include "swcip/field.hpp"

namespace swcip {

enum class SpaceScheme { NonWellBalanced, HydrostaticSplit, GlobalFlux };

std::string to_string(SpaceScheme scheme);

/// Global flux G = F + R with R the running integral of minus the
/// discretized source, accumulated left to right. `values` holds G at the
/// DoF coordinates, `coeffs` the coefficients of its C0 interpolant.
struct GlobalFluxField {
  std::vector<Vec2> values;
  std::vector<Vec2> coeffs;
};

/// Builds the global flux for the current state. The second source
/// component is discretized as the in-element re-interpolation of
/// g (H_h + B_h) dB_h/dx minus the derivative of the interpolant of
/// g B^2 / 2, which makes G constant at lake-at-rest states; the friction
/// part integrates the interpolant of its nodal samples.
GlobalFluxField compute_global_flux(const Mesh1D& mesh, const Basis& basis,
                                    const SolutionField& state, const DiscreteBathymetry& bathy,
                                    const PhysParams& params);

/// Per-DoF spatial residuals: the integrals of the chosen discretization of
/// d/dx F - S against each basis function. Assembly runs elements left to
/// right with local DoFs in index order, so the floating-point result is
/// reproducible. For the global-flux scheme a precomputed field may be
/// passed; otherwise it is built internally.
void assemble_space_residual(SpaceScheme scheme, const Mesh1D& mesh, const Basis& basis,
                             const SolutionField& state, const DiscreteBathymetry& bathy,
                             const PhysParams& params, SolutionField& out,
                             const GlobalFluxField* gflux = nullptr);

SolutionField assemble_space_residual(SpaceScheme scheme, const Mesh1D& mesh, const Basis& basis,
                                      const SolutionField& state, const DiscreteBathymetry& bathy,
                                      const PhysParams& params,
                                      const GlobalFluxField* gflux = nullptr);

/// Element-local integrals of (0, g H_h d(H_h+B_h)/dx) against each local
/// basis function (the hydrostatic part of the split scheme).
std::array<Vec2, kMaxLocal> wb_hs_hydrostatic_term(const Mesh1D& mesh, const Basis& basis,
                                                   const SolutionField& state,
                                                   const DiscreteBathymetry& bathy,
                                                   const PhysParams& params, int element);

}  // namespace swcip

#endif
