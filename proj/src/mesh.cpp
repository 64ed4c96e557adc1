#include "swcip/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace swcip {

Mesh1D build_uniform_mesh(double x_left, double x_right, int n_elem, const Basis& basis) {
  if (!(x_right > x_left)) throw std::invalid_argument("mesh: domain must have positive length");
  if (n_elem < 2) throw std::invalid_argument("mesh: at least 2 elements required");

  Mesh1D mesh;
  mesh.x_left = x_left;
  mesh.x_right = x_right;
  mesh.degree = basis.degree();
  const double dx = (x_right - x_left) / n_elem;

  mesh.element_bounds.resize(n_elem + 1);
  for (int e = 0; e <= n_elem; ++e) mesh.element_bounds[e] = x_left + e * dx;
  mesh.element_bounds[n_elem] = x_right;

  const int M = basis.degree();
  mesh.dof_coords.resize(n_elem * M + 1);
  for (int e = 0; e < n_elem; ++e) {
    const double a = mesh.element_bounds[e];
    const double h = mesh.element_bounds[e + 1] - a;
    for (int k = 0; k < M; ++k) mesh.dof_coords[e * M + k] = a + h * basis.nodes()[k];
  }
  mesh.dof_coords.back() = x_right;

  mesh.faces.resize(n_elem - 1);
  for (int f = 0; f < n_elem - 1; ++f) {
    mesh.faces[f].index = f;
    mesh.faces[f].left_elem = f;
    mesh.faces[f].right_elem = f + 1;
    mesh.faces[f].x = mesh.element_bounds[f + 1];
    mesh.faces[f].shared_dof = (f + 1) * M;
  }
  return mesh;
}

double one_sided_eval(const Mesh1D& mesh, const Basis& basis, std::span<const double> coeffs,
                      const Face& face, Side side, int r) {
  const int e = (side == Side::Left) ? face.left_elem : face.right_elem;
  const int boundary = (side == Side::Left) ? 1 : 0;  // xi = 1 from the left, xi = 0 from the right
  const double scale = std::pow(1.0 / mesh.element_length(e), r);
  double s = 0.0;
  for (int k = 0; k < mesh.local_count(); ++k)
    s += coeffs[mesh.dof(e, k)] * basis.boundary_value(r, boundary, k);
  return s * scale;
}

Vec2 one_sided_eval(const Mesh1D& mesh, const Basis& basis, const SolutionField& field,
                    const Face& face, Side side, int r) {
  const int e = (side == Side::Left) ? face.left_elem : face.right_elem;
  const int boundary = (side == Side::Left) ? 1 : 0;
  const double scale = std::pow(1.0 / mesh.element_length(e), r);
  Vec2 s;
  for (int k = 0; k < mesh.local_count(); ++k) {
    const double b = basis.boundary_value(r, boundary, k);
    const Vec2& c = field[mesh.dof(e, k)];
    s[0] += c[0] * b;
    s[1] += c[1] * b;
  }
  s[0] *= scale;
  s[1] *= scale;
  return s;
}

}  // namespace swcip
