#ifndef SWCIP_MESH_HPP
#define SWCIP_MESH_HPP

#include <vector>

#include "swcip/basis.hpp"
#include "swcip/linalg.hpp"

namespace swcip {

/// Coefficient vector of the piecewise-polynomial numerical solution, one
/// (H, q) pair per global DoF.
using SolutionField = std::vector<Vec2>;

/// Interior face shared by two neighboring elements.
struct Face {
  int index = 0;
  int left_elem = 0;
  int right_elem = 0;
  double x = 0.0;
  int shared_dof = 0;  // global index of the C0 node at the face
};

enum class Side { Left, Right };

/// One-dimensional tessellation with global DoF numbering. Elements are
/// stored left to right; neighboring elements share exactly one DoF.
struct Mesh1D {
  double x_left = 0.0;
  double x_right = 0.0;
  int degree = 1;
  std::vector<double> element_bounds;  // n_elem + 1 sorted endpoints
  std::vector<double> dof_coords;      // strictly increasing, size n_elem*degree + 1
  std::vector<Face> faces;             // n_elem - 1 interior faces

  int element_count() const { return static_cast<int>(element_bounds.size()) - 1; }
  int dof_count() const { return static_cast<int>(dof_coords.size()); }
  int local_count() const { return degree + 1; }
  double element_length(int e) const { return element_bounds[e + 1] - element_bounds[e]; }
  /// Global index of local DoF k of element e.
  int dof(int e, int k) const { return e * degree + k; }
};

/// Uniform tessellation of [x_left, x_right] carrying the local node layout
/// of the given basis. Requires n_elem >= 2 so that interior faces exist.
Mesh1D build_uniform_mesh(double x_left, double x_right, int n_elem, const Basis& basis);

/// Evaluates the r-th spatial derivative of a scalar coefficient field at a
/// face using only the polynomial of the requested side. Includes the
/// (1/dx)^r chain-rule factor.
double one_sided_eval(const Mesh1D& mesh, const Basis& basis, std::span<const double> coeffs,
                      const Face& face, Side side, int r);

/// Same for an (H, q) field; returns the per-component values.
Vec2 one_sided_eval(const Mesh1D& mesh, const Basis& basis, const SolutionField& field,
                    const Face& face, Side side, int r);

}  // namespace swcip

#endif
