#include "swcip/stabilization.hpp"

#include <cmath>
#include <stdexcept>

namespace swcip {

namespace {

// Builds the per-element interpolant of the entropy variables from the
// nodal state values and the bathymetry point samples.
SolutionField entropy_field(const Mesh1D& mesh, const Basis& basis, const SolutionField& state,
                            const DiscreteBathymetry& bathy, const PhysParams& params) {
  SolutionField w(mesh.dof_count());
  const int n = mesh.local_count();
  std::array<Vec2, kMaxLocal> u{};
  std::array<double, kMaxLocal> samples{}, coef{};
  for (int comp = 0; comp < 2; ++comp)
    for (int e = 0; e < mesh.element_count(); ++e) {
      element_nodal_values(mesh, basis, state, e, u);
      for (int k = 0; k < n; ++k)
        samples[k] = swe::entropy_vars(u[k], bathy.samples[mesh.dof(e, k)], params)[comp];
      basis.interpolation_coefficients(std::span(samples.data(), n), std::span(coef.data(), n));
      for (int k = 0; k < n; ++k) w[mesh.dof(e, k)][comp] = coef[k];
    }
  return w;
}

// One-sided r-th derivative of a scalar coefficient field at a face.
double side_deriv(const Mesh1D& mesh, const Basis& basis, std::span<const double> coeffs,
                  const Face& face, int side, int r) {
  const int e = (side == 0) ? face.left_elem : face.right_elem;
  const int boundary = (side == 0) ? 1 : 0;
  const double scale = std::pow(1.0 / mesh.element_length(e), r);
  double s = 0.0;
  for (int k = 0; k < mesh.local_count(); ++k)
    s += coeffs[mesh.dof(e, k)] * basis.boundary_value(r, boundary, k);
  return s * scale;
}

Vec2 side_deriv(const Mesh1D& mesh, const Basis& basis, const SolutionField& field,
                const Face& face, int side, int r) {
  const int e = (side == 0) ? face.left_elem : face.right_elem;
  const int boundary = (side == 0) ? 1 : 0;
  const double scale = std::pow(1.0 / mesh.element_length(e), r);
  Vec2 s;
  for (int k = 0; k < mesh.local_count(); ++k) {
    const double b = basis.boundary_value(r, boundary, k);
    s[0] += field[mesh.dof(e, k)][0] * b;
    s[1] += field[mesh.dof(e, k)][1] * b;
  }
  return s * scale;
}

struct FaceWork {
  int order_count = 1;          // penalized derivative orders (2 for jc/jt)
  double alpha[2] = {0.0, 0.0};
  Vec2 weighted_jump[2];        // consistency matrix already applied
};

FaceWork face_work(const StabParams& stab, const Mesh1D& mesh, const Basis& basis,
                   const SolutionField& state, const DiscreteBathymetry& bathy,
                   const PhysParams& params, const GlobalFluxField* gflux,
                   const SolutionField* wfield, const Face& face, double h_f) {
  FaceWork fw;
  // The trace of the C0 solution at the face is the shared DoF coefficient
  // (endpoint basis functions are cardinal for every supported family).
  const Vec2 u_f = state[face.shared_dof];
  swe::require_wet(u_f);
  const double rho_f = swe::spectral_radius(u_f, params);

  switch (stab.kind) {
    case StabKind::ConservedJump:
    case StabKind::TotalHeightJump: {
      fw.order_count = 2;
      const double deltas[2] = {stab.delta1, stab.delta2};
      for (int r = 1; r <= 2; ++r) {
        fw.alpha[r - 1] = stab_coefficient(deltas[r - 1], rho_f, h_f, r);
        Vec2 jump = side_deriv(mesh, basis, state, face, 0, r) -
                    side_deriv(mesh, basis, state, face, 1, r);
        if (stab.kind == StabKind::TotalHeightJump)
          jump[0] += side_deriv(mesh, basis, bathy.coeffs, face, 0, r) -
                     side_deriv(mesh, basis, bathy.coeffs, face, 1, r);
        fw.weighted_jump[r - 1] = jump;
      }
      break;
    }
    case StabKind::EntropyJump: {
      fw.alpha[0] = stab_coefficient(stab.delta1, rho_f, h_f, 1);
      const Vec2 jump = side_deriv(mesh, basis, *wfield, face, 0, 1) -
                        side_deriv(mesh, basis, *wfield, face, 1, 1);
      fw.weighted_jump[0] = swe::entropy_to_conserved_jacobian(u_f, params) * jump;
      break;
    }
    case StabKind::ResidualJump: {
      fw.alpha[0] = stab_coefficient(stab.delta1, rho_f, h_f, 1);
      const Mat2 jac = swe::jacobian(u_f, params);
      const Vec2 du = side_deriv(mesh, basis, state, face, 0, 1) -
                      side_deriv(mesh, basis, state, face, 1, 1);
      const double db = side_deriv(mesh, basis, bathy.coeffs, face, 0, 1) -
                        side_deriv(mesh, basis, bathy.coeffs, face, 1, 1);
      Vec2 residual_jump = jac * du;
      residual_jump[1] += params.g * u_f[0] * db;  // minus the bathymetry source jump
      const Mat2 weight = jac * swe::abs_jacobian_inverse(u_f, params, stab.eig_fix);
      fw.weighted_jump[0] = weight * residual_jump;
      break;
    }
    case StabKind::GlobalFluxJump: {
      if (gflux == nullptr)
        throw std::invalid_argument("stabilization: jg requires a global-flux field");
      fw.alpha[0] = stab_coefficient(stab.delta1, rho_f, h_f, 1);
      const Mat2 jac = swe::jacobian(u_f, params);
      const Vec2 dg = side_deriv(mesh, basis, gflux->coeffs, face, 0, 1) -
                      side_deriv(mesh, basis, gflux->coeffs, face, 1, 1);
      const Mat2 weight = jac * swe::abs_jacobian_inverse(u_f, params, stab.eig_fix);
      fw.weighted_jump[0] = weight * dg;
      break;
    }
  }
  return fw;
}

}  // namespace

std::string to_string(StabKind kind) {
  switch (kind) {
    case StabKind::ConservedJump:
      return "jc";
    case StabKind::TotalHeightJump:
      return "jt";
    case StabKind::EntropyJump:
      return "je";
    case StabKind::ResidualJump:
      return "jr";
    case StabKind::GlobalFluxJump:
      return "jg";
  }
  return "?";
}

double default_delta1(int degree) {
  switch (degree) {
    case 1:
      return 0.05;
    case 2:
      return 0.3;
    case 3:
      return 0.15;
    case 4:
      return 0.5;
  }
  throw std::invalid_argument("stabilization: degree must be in [1,4]");
}

double default_delta2(int degree) {
  switch (degree) {
    case 1:
      return 0.5;
    case 2:
      return 0.2;
    case 3:
      return 0.2;
    case 4:
      return 0.01;
  }
  throw std::invalid_argument("stabilization: degree must be in [1,4]");
}

double default_cfl(int degree) { return degree >= 4 ? 0.05 : 0.1; }

std::vector<double> face_length_scale(const Mesh1D& mesh, const Basis& basis) {
  std::vector<double> h(mesh.faces.size());
  const int n = mesh.local_count();
  for (const Face& face : mesh.faces) {
    const double inv_dl = 1.0 / mesh.element_length(face.left_elem);
    const double inv_dr = 1.0 / mesh.element_length(face.right_elem);
    double sum = 0.0;
    // DoFs of the left element; the shared one sees both sides.
    for (int k = 0; k < n; ++k) {
      double jump = basis.boundary_value(1, 1, k) * inv_dl;
      if (k == n - 1) jump -= basis.boundary_value(1, 0, 0) * inv_dr;
      sum += std::abs(jump);
    }
    // Remaining DoFs of the right element.
    for (int k = 1; k < n; ++k) sum += std::abs(basis.boundary_value(1, 0, k) * inv_dr);
    h[face.index] = 2.0 / sum;
  }
  return h;
}

double stab_coefficient(double delta_r, double rho_f, double h_f, int r) {
  return delta_r * rho_f * std::pow(h_f, 2 * r);
}

void assemble_stabilization(const StabParams& stab, const Mesh1D& mesh, const Basis& basis,
                            const SolutionField& state, const DiscreteBathymetry& bathy,
                            const PhysParams& params, const GlobalFluxField* gflux,
                            SolutionField& out) {
  out.assign(mesh.dof_count(), Vec2{});
  const int n = mesh.local_count();
  const std::vector<double> h_f = face_length_scale(mesh, basis);

  SolutionField wfield;
  if (stab.kind == StabKind::EntropyJump)
    wfield = entropy_field(mesh, basis, state, bathy, params);

  for (const Face& face : mesh.faces) {
    const FaceWork fw =
        face_work(stab, mesh, basis, state, bathy, params, gflux, &wfield, face, h_f[face.index]);
    for (int r = 1; r <= fw.order_count; ++r) {
      const double inv_dl = std::pow(1.0 / mesh.element_length(face.left_elem), r);
      const double inv_dr = std::pow(1.0 / mesh.element_length(face.right_elem), r);
      const Vec2 term = fw.alpha[r - 1] * fw.weighted_jump[r - 1];
      for (int k = 0; k < n; ++k) {
        double test = basis.boundary_value(r, 1, k) * inv_dl;
        if (k == n - 1) test -= basis.boundary_value(r, 0, 0) * inv_dr;
        out[mesh.dof(face.left_elem, k)] += test * term;
      }
      for (int k = 1; k < n; ++k) {
        const double test = -basis.boundary_value(r, 0, k) * inv_dr;
        out[mesh.dof(face.right_elem, k)] += test * term;
      }
    }
  }
}

SolutionField assemble_stabilization(const StabParams& stab, const Mesh1D& mesh,
                                     const Basis& basis, const SolutionField& state,
                                     const DiscreteBathymetry& bathy, const PhysParams& params,
                                     const GlobalFluxField* gflux) {
  SolutionField out;
  assemble_stabilization(stab, mesh, basis, state, bathy, params, gflux, out);
  return out;
}

std::vector<std::array<Vec2, kMaxLocal>> rd_split_stabilization(
    const StabParams& stab, const Mesh1D& mesh, const Basis& basis, const SolutionField& state,
    const DiscreteBathymetry& bathy, const PhysParams& params, const GlobalFluxField* gflux) {
  std::vector<std::array<Vec2, kMaxLocal>> split(mesh.element_count());
  const int n = mesh.local_count();
  const std::vector<double> h_f = face_length_scale(mesh, basis);

  SolutionField wfield;
  if (stab.kind == StabKind::EntropyJump)
    wfield = entropy_field(mesh, basis, state, bathy, params);

  for (const Face& face : mesh.faces) {
    const FaceWork fw =
        face_work(stab, mesh, basis, state, bathy, params, gflux, &wfield, face, h_f[face.index]);
    for (int r = 1; r <= fw.order_count; ++r) {
      const double inv_dl = std::pow(1.0 / mesh.element_length(face.left_elem), r);
      const double inv_dr = std::pow(1.0 / mesh.element_length(face.right_elem), r);
      const Vec2 term = fw.alpha[r - 1] * fw.weighted_jump[r - 1];
      // Owning element to the left: jump orientation matches the global
      // left-minus-right convention.
      for (int k = 0; k < n; ++k)
        split[face.left_elem][k] += (basis.boundary_value(r, 1, k) * inv_dl) * term;
      // Owning element to the right: orientation flips.
      for (int k = 0; k < n; ++k)
        split[face.right_elem][k] -= (basis.boundary_value(r, 0, k) * inv_dr) * term;
    }
  }
  return split;
}

}  // namespace swcip
