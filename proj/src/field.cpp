#include "swcip/field.hpp"

#include <algorithm>
#include <cmath>

namespace swcip {

std::vector<double> interpolate_scalar(const Mesh1D& mesh, const Basis& basis,
                                       const std::function<double(double)>& f) {
  std::vector<double> coeffs(mesh.dof_count());
  std::array<double, kMaxLocal> samples{}, local{};
  const int n = mesh.local_count();
  for (int e = 0; e < mesh.element_count(); ++e) {
    for (int k = 0; k < n; ++k) samples[k] = f(mesh.dof_coords[mesh.dof(e, k)]);
    basis.interpolation_coefficients(std::span(samples.data(), n), std::span(local.data(), n));
    for (int k = 0; k < n; ++k) coeffs[mesh.dof(e, k)] = local[k];
  }
  return coeffs;
}

SolutionField interpolate_state(const Mesh1D& mesh, const Basis& basis,
                                const std::function<Vec2(double)>& f) {
  SolutionField field(mesh.dof_count());
  std::array<double, kMaxLocal> samples{}, local{};
  const int n = mesh.local_count();
  for (int comp = 0; comp < 2; ++comp)
    for (int e = 0; e < mesh.element_count(); ++e) {
      for (int k = 0; k < n; ++k) samples[k] = f(mesh.dof_coords[mesh.dof(e, k)])[comp];
      basis.interpolation_coefficients(std::span(samples.data(), n), std::span(local.data(), n));
      for (int k = 0; k < n; ++k) field[mesh.dof(e, k)][comp] = local[k];
    }
  return field;
}

int find_element(const Mesh1D& mesh, double x) {
  const auto& b = mesh.element_bounds;
  if (x <= b.front()) return 0;
  if (x >= b.back()) return mesh.element_count() - 1;
  const auto it = std::upper_bound(b.begin(), b.end(), x);
  return static_cast<int>(it - b.begin()) - 1;
}

double eval_scalar(const Mesh1D& mesh, const Basis& basis, std::span<const double> coeffs,
                   double x) {
  const int e = find_element(mesh, x);
  const double xi = (x - mesh.element_bounds[e]) / mesh.element_length(e);
  std::array<double, kMaxLocal> phi{};
  basis.eval(0, std::clamp(xi, 0.0, 1.0), std::span(phi.data(), mesh.local_count()));
  double s = 0.0;
  for (int k = 0; k < mesh.local_count(); ++k) s += coeffs[mesh.dof(e, k)] * phi[k];
  return s;
}

Vec2 eval_state(const Mesh1D& mesh, const Basis& basis, const SolutionField& field, double x) {
  const int e = find_element(mesh, x);
  const double xi = (x - mesh.element_bounds[e]) / mesh.element_length(e);
  std::array<double, kMaxLocal> phi{};
  basis.eval(0, std::clamp(xi, 0.0, 1.0), std::span(phi.data(), mesh.local_count()));
  Vec2 s;
  for (int k = 0; k < mesh.local_count(); ++k) {
    const Vec2& c = field[mesh.dof(e, k)];
    s[0] += c[0] * phi[k];
    s[1] += c[1] * phi[k];
  }
  return s;
}

void element_nodal_values(const Mesh1D& mesh, const Basis& basis, const SolutionField& field,
                          int element, std::array<Vec2, kMaxLocal>& out) {
  const int n = mesh.local_count();
  std::array<double, kMaxLocal> comp{}, vals{};
  for (int c = 0; c < 2; ++c) {
    for (int k = 0; k < n; ++k) comp[k] = field[mesh.dof(element, k)][c];
    basis.nodal_values(std::span(comp.data(), n), std::span(vals.data(), n));
    for (int k = 0; k < n; ++k) out[k][c] = vals[k];
  }
}

SolutionField nodal_values(const Mesh1D& mesh, const Basis& basis, const SolutionField& field) {
  SolutionField out(mesh.dof_count());
  std::array<Vec2, kMaxLocal> local{};
  for (int e = 0; e < mesh.element_count(); ++e) {
    element_nodal_values(mesh, basis, field, e, local);
    for (int k = 0; k < mesh.local_count(); ++k) out[mesh.dof(e, k)] = local[k];
  }
  return out;
}

DiscreteBathymetry discretize_bathymetry(const Mesh1D& mesh, const Basis& basis,
                                         const Bathymetry& bathy) {
  DiscreteBathymetry db;
  db.shape = bathy;
  db.samples.resize(mesh.dof_count());
  db.slopes.resize(mesh.dof_count());
  for (int i = 0; i < mesh.dof_count(); ++i) {
    db.samples[i] = bathy.value(mesh.dof_coords[i]);
    db.slopes[i] = bathy.slope(mesh.dof_coords[i]);
  }
  db.coeffs = interpolate_scalar(mesh, basis, [&](double x) { return bathy.value(x); });
  return db;
}

}  // namespace swcip
