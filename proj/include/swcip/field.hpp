#ifndef SWCIP_FIELD_HPP
#define SWCIP_FIELD_HPP

#include <array>
#include <functional>
#include <vector>

#include "swcip/basis.hpp"
#include "swcip/mesh.hpp"
#include "swcip/physics.hpp"

namespace swcip {

/// Interpolates a scalar function into the global FE space: per element,
/// sample at the local nodes and collocate. Shared DoFs receive the same
/// value from both sides, so the result is C0 by construction.
std::vector<double> interpolate_scalar(const Mesh1D& mesh, const Basis& basis,
                                       const std::function<double(double)>& f);

/// Same for an (H, q) state function.
SolutionField interpolate_state(const Mesh1D& mesh, const Basis& basis,
                                const std::function<Vec2(double)>& f);

/// Index of the element containing x (clamped to the domain).
int find_element(const Mesh1D& mesh, double x);

double eval_scalar(const Mesh1D& mesh, const Basis& basis, std::span<const double> coeffs, double x);
Vec2 eval_state(const Mesh1D& mesh, const Basis& basis, const SolutionField& field, double x);

/// Values of the field at the element's local nodes (identity for Lagrange
/// bases, collocation product for Bernstein).
void element_nodal_values(const Mesh1D& mesh, const Basis& basis, const SolutionField& field,
                          int element, std::array<Vec2, kMaxLocal>& out);

/// Values of a coefficient field at every DoF coordinate.
SolutionField nodal_values(const Mesh1D& mesh, const Basis& basis, const SolutionField& field);

/// Bathymetry discretized against a mesh/basis pair: per-DoF point samples,
/// the C0 interpolant coefficients, and analytic slope samples.
struct DiscreteBathymetry {
  Bathymetry shape;
  std::vector<double> samples;  // B(x_i)
  std::vector<double> coeffs;   // interpolant coefficients
  std::vector<double> slopes;   // dB/dx at the DoF coordinates
};

DiscreteBathymetry discretize_bathymetry(const Mesh1D& mesh, const Basis& basis,
                                         const Bathymetry& bathy);

}  // namespace swcip

#endif
