#ifndef SWCIP_STABILIZATION_HPP
#define SWCIP_STABILIZATION_HPP

#include <array>
#include <string>
#include <vector>

#include "swcip/field.hpp"
#include "swcip/space.hpp"

namespace swcip {

/// Quantity whose face derivative jumps are penalized: conserved variables
/// (jc), total height (jt), entropy variables (je), space residual (jr) or
/// global flux derivative (jg).
enum class StabKind { ConservedJump, TotalHeightJump, EntropyJump, ResidualJump, GlobalFluxJump };

std::string to_string(StabKind kind);

struct StabParams {
  StabKind kind = StabKind::TotalHeightJump;
  double delta1 = 0.0;
  double delta2 = 0.0;    // second-derivative coefficient, jc/jt only
  double eig_fix = 0.05;  // eigenvalue smoothing fraction for |J|^-1
};

/// Tuned penalty coefficients per polynomial degree.
double default_delta1(int degree);
double default_delta2(int degree);
/// 0.1, reduced to 0.05 for degree-4 bases.
double default_cfl(int degree);

/// Per-face characteristic length: inverse of half the sum of the absolute
/// first-derivative jumps of all basis functions of the two adjacent
/// elements.
std::vector<double> face_length_scale(const Mesh1D& mesh, const Basis& basis);

/// alpha_{f,r} = delta_r * rho_f * h_f^(2r).
double stab_coefficient(double delta_r, double rho_f, double h_f, int r);

/// Face-penalty contributions ST_i accumulated over all interior faces,
/// left to right. The jump convention is left-minus-right. A global-flux
/// field is required for the jg scheme and ignored otherwise.
void assemble_stabilization(const StabParams& stab, const Mesh1D& mesh, const Basis& basis,
                            const SolutionField& state, const DiscreteBathymetry& bathy,
                            const PhysParams& params, const GlobalFluxField* gflux,
                            SolutionField& out);

SolutionField assemble_stabilization(const StabParams& stab, const Mesh1D& mesh,
                                     const Basis& basis, const SolutionField& state,
                                     const DiscreteBathymetry& bathy, const PhysParams& params,
                                     const GlobalFluxField* gflux = nullptr);

/// Per-element split ST_i^K with one-sided test factors and jumps oriented
/// from the owning element toward its neighbor. Element sums vanish by the
/// local partition of unity, and re-assembling over the elements containing
/// a DoF reproduces assemble_stabilization.
std::vector<std::array<Vec2, kMaxLocal>> rd_split_stabilization(
    const StabParams& stab, const Mesh1D& mesh, const Basis& basis, const SolutionField& state,
    const DiscreteBathymetry& bathy, const PhysParams& params,
    const GlobalFluxField* gflux = nullptr);

}  // namespace swcip

#endif
