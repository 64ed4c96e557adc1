#include "swcip/space.hpp"

#include <cmath>
#include <stdexcept>

namespace swcip {

namespace {

struct ElementScratch {
  std::array<Vec2, kMaxLocal> u;       // nodal values
  std::array<double, kMaxLocal> s0{};  // sample buffers
  std::array<double, kMaxLocal> s1{};
  std::array<double, kMaxLocal> c0{};  // coefficient buffers
  std::array<double, kMaxLocal> c1{};
};

}  // namespace

std::string to_string(SpaceScheme scheme) {
  switch (scheme) {
    case SpaceScheme::NonWellBalanced:
      return "nonwb";
    case SpaceScheme::HydrostaticSplit:
      return "wbhs";
    case SpaceScheme::GlobalFlux:
      return "wbgf";
  }
  return "?";
}

GlobalFluxField compute_global_flux(const Mesh1D& mesh, const Basis& basis,
                                    const SolutionField& state, const DiscreteBathymetry& bathy,
                                    const PhysParams& params) {
  const int n = mesh.local_count();
  GlobalFluxField gf;
  gf.values.resize(mesh.dof_count());
  gf.coeffs.resize(mesh.dof_count());

  ElementScratch ws;
  std::array<double, kMaxLocal> pc{}, svc{}, b2{};
  double r2 = 0.0;  // running second component of R, continuous across faces
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double dx = mesh.element_length(e);
    element_nodal_values(mesh, basis, state, e, ws.u);

    // In-element samples of g (H_h + B_h) dB_h/dx at the nodes; dB_h/dx is
    // one-sided within the element by construction.
    for (int k = 0; k < n; ++k) {
      const int gdof = mesh.dof(e, k);
      swe::require_wet(ws.u[k]);
      double dbh = 0.0;
      for (int j = 0; j < n; ++j) dbh += bathy.coeffs[mesh.dof(e, j)] * basis.deriv_at_node(k, j);
      dbh /= dx;
      ws.s0[k] = params.g * (ws.u[k][0] + bathy.samples[gdof]) * dbh;
      ws.s1[k] = swe::source_velocity_part(ws.u[k], params)[1];
      b2[k] = 0.5 * params.g * bathy.samples[gdof] * bathy.samples[gdof];
    }
    basis.interpolation_coefficients(std::span(ws.s0.data(), n), std::span(pc.data(), n));
    basis.interpolation_coefficients(std::span(ws.s1.data(), n), std::span(svc.data(), n));

    const double r2_entry = r2;
    for (int k = 0; k < n; ++k) {
      double integral = 0.0;  // of the bracketed source terms from the element edge
      for (int j = 0; j < n; ++j) integral += (pc[j] - svc[j]) * basis.antiderivative_at_node(k, j);
      const double r2_here = r2_entry + dx * integral - (b2[k] - b2[0]);
      const Vec2 f = swe::flux(ws.u[k], params);
      gf.values[mesh.dof(e, k)] = {f[0], f[1] + r2_here};
      if (k == n - 1) r2 = r2_here;
    }
  }

  // Interpolate the DoF values back into the FE space.
  std::array<double, kMaxLocal> vals{}, coef{};
  for (int comp = 0; comp < 2; ++comp)
    for (int e = 0; e < mesh.element_count(); ++e) {
      for (int k = 0; k < n; ++k) vals[k] = gf.values[mesh.dof(e, k)][comp];
      basis.interpolation_coefficients(std::span(vals.data(), n), std::span(coef.data(), n));
      for (int k = 0; k < n; ++k) gf.coeffs[mesh.dof(e, k)][comp] = coef[k];
    }
  return gf;
}

std::array<Vec2, kMaxLocal> wb_hs_hydrostatic_term(const Mesh1D& mesh, const Basis& basis,
                                                   const SolutionField& state,
                                                   const DiscreteBathymetry& bathy,
                                                   const PhysParams& params, int element) {
  const int n = mesh.local_count();
  const auto& rule = basis.quadrature();
  std::array<Vec2, kMaxLocal> out{};
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    double h_q = 0.0, deta_q = 0.0;
    for (int j = 0; j < n; ++j) {
      const int gdof = mesh.dof(element, j);
      h_q += state[gdof][0] * basis.phi_at_quad(static_cast<int>(q), j);
      deta_q += (state[gdof][0] + bathy.coeffs[gdof]) * basis.dphi_at_quad(static_cast<int>(q), j);
    }
    // The 1/dx of the derivative cancels the dx of the measure.
    const double w = rule.weights[q] * params.g * h_q * deta_q;
    for (int i = 0; i < n; ++i) out[i][1] += w * basis.phi_at_quad(static_cast<int>(q), i);
  }
  return out;
}

void assemble_space_residual(SpaceScheme scheme, const Mesh1D& mesh, const Basis& basis,
                             const SolutionField& state, const DiscreteBathymetry& bathy,
                             const PhysParams& params, SolutionField& out,
                             const GlobalFluxField* gflux) {
  const int n = mesh.local_count();
  out.assign(mesh.dof_count(), Vec2{});

  GlobalFluxField local_gf;
  if (scheme == SpaceScheme::GlobalFlux && gflux == nullptr) {
    local_gf = compute_global_flux(mesh, basis, state, bathy, params);
    gflux = &local_gf;
  }

  ElementScratch ws;
  std::array<double, kMaxLocal> fc0{}, fc1{}, sc{};
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double dx = mesh.element_length(e);
    switch (scheme) {
      case SpaceScheme::NonWellBalanced: {
        element_nodal_values(mesh, basis, state, e, ws.u);
        for (int k = 0; k < n; ++k) {
          const int gdof = mesh.dof(e, k);
          const Vec2 f = swe::flux(ws.u[k], params);
          ws.s0[k] = f[0];
          ws.s1[k] = f[1];
          sc[k] = swe::source(ws.u[k], bathy.slopes[gdof], params)[1];
        }
        basis.interpolation_coefficients(std::span(ws.s0.data(), n), std::span(fc0.data(), n));
        basis.interpolation_coefficients(std::span(ws.s1.data(), n), std::span(fc1.data(), n));
        basis.interpolation_coefficients(std::span(sc.data(), n), std::span(ws.c0.data(), n));
        for (int i = 0; i < n; ++i) {
          Vec2 acc;
          for (int j = 0; j < n; ++j) {
            const double kij = basis.conv_ref(i, j);
            acc[0] += kij * fc0[j];
            acc[1] += kij * fc1[j] - dx * basis.mass_ref(i, j) * ws.c0[j];
          }
          out[mesh.dof(e, i)] += acc;
        }
        break;
      }
      case SpaceScheme::HydrostaticSplit: {
        element_nodal_values(mesh, basis, state, e, ws.u);
        for (int k = 0; k < n; ++k) {
          const Vec2 fv = swe::flux_velocity_part(ws.u[k], params);
          ws.s0[k] = fv[0];
          ws.s1[k] = fv[1];
          sc[k] = swe::source_velocity_part(ws.u[k], params)[1];
        }
        basis.interpolation_coefficients(std::span(ws.s0.data(), n), std::span(fc0.data(), n));
        basis.interpolation_coefficients(std::span(ws.s1.data(), n), std::span(fc1.data(), n));
        basis.interpolation_coefficients(std::span(sc.data(), n), std::span(ws.c0.data(), n));
        const auto hydro = wb_hs_hydrostatic_term(mesh, basis, state, bathy, params, e);
        for (int i = 0; i < n; ++i) {
          Vec2 acc = hydro[i];
          for (int j = 0; j < n; ++j) {
            const double kij = basis.conv_ref(i, j);
            acc[0] += kij * fc0[j];
            acc[1] += kij * fc1[j] - dx * basis.mass_ref(i, j) * ws.c0[j];
          }
          out[mesh.dof(e, i)] += acc;
        }
        break;
      }
      case SpaceScheme::GlobalFlux: {
        for (int i = 0; i < n; ++i) {
          Vec2 acc;
          for (int j = 0; j < n; ++j) {
            const double kij = basis.conv_ref(i, j);
            const Vec2& g = gflux->coeffs[mesh.dof(e, j)];
            acc[0] += kij * g[0];
            acc[1] += kij * g[1];
          }
          out[mesh.dof(e, i)] += acc;
        }
        break;
      }
    }
  }
}

SolutionField assemble_space_residual(SpaceScheme scheme, const Mesh1D& mesh, const Basis& basis,
                                      const SolutionField& state, const DiscreteBathymetry& bathy,
                                      const PhysParams& params, const GlobalFluxField* gflux) {
  SolutionField out;
  assemble_space_residual(scheme, mesh, basis, state, bathy, params, out, gflux);
  return out;
}

}  // namespace swcip
