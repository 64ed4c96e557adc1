#include <cmath>
#include <random>

#include "doctest.h"
#include "swcip/field.hpp"
#include "swcip/mesh.hpp"

using namespace swcip;

TEST_SUITE_BEGIN("mesh");

TEST_CASE("uniform mesh counts and coordinates") {
  const Basis b4(BasisSpec{BasisFamily::LagrangeGaussLobatto, 4});
  const Mesh1D mesh = build_uniform_mesh(0.0, 25.0, 100, b4);
  CHECK(mesh.dof_count() == 401);
  CHECK(mesh.faces.size() == 99);
  CHECK(mesh.element_count() == 100);

  const Basis b1(BasisSpec{BasisFamily::Bernstein, 1});
  const Mesh1D coarse = build_uniform_mesh(0.0, 25.0, 100, b1);
  CHECK(coarse.dof_count() == 101);

  for (int i = 1; i < mesh.dof_count(); ++i) CHECK(mesh.dof_coords[i] > mesh.dof_coords[i - 1]);

  double total = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) total += mesh.element_length(e);
  CHECK(total == doctest::Approx(25.0).epsilon(1e-15));

  for (const Face& f : mesh.faces) {
    CHECK(f.right_elem == f.left_elem + 1);
    CHECK(f.x == doctest::Approx(mesh.element_bounds[f.left_elem + 1]).epsilon(1e-15));
    CHECK(mesh.dof_coords[f.shared_dof] == doctest::Approx(f.x).epsilon(1e-15));
  }
}

TEST_CASE("mesh construction errors") {
  const Basis b(BasisSpec{BasisFamily::Bernstein, 2});
  CHECK_THROWS_AS(build_uniform_mesh(0.0, 25.0, 1, b), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_mesh(3.0, 3.0, 10, b), std::invalid_argument);
}

TEST_CASE("one-sided evaluation: C0 fields have no value jump") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (BasisFamily family :
       {BasisFamily::Bernstein, BasisFamily::LagrangeEquispaced, BasisFamily::LagrangeGaussLobatto}) {
    const int max_degree = family == BasisFamily::LagrangeEquispaced ? 3 : 4;
    for (int degree = 1; degree <= max_degree; ++degree) {
      const Basis basis(BasisSpec{family, degree});
      const Mesh1D mesh = build_uniform_mesh(-1.0, 4.0, 7, basis);
      std::vector<double> coeffs(mesh.dof_count());
      for (auto& c : coeffs) c = unif(rng);
      for (const Face& f : mesh.faces) {
        const double left = one_sided_eval(mesh, basis, coeffs, f, Side::Left, 0);
        const double right = one_sided_eval(mesh, basis, coeffs, f, Side::Right, 0);
        CHECK(std::abs(left - right) <= 1e-14);
      }
    }
  }
}

TEST_CASE("one-sided evaluation: global linear field has unit slope on both sides") {
  const Basis basis(BasisSpec{BasisFamily::LagrangeEquispaced, 1});
  const Mesh1D mesh = build_uniform_mesh(0.0, 2.0, 4, basis);
  std::vector<double> coeffs(mesh.dof_count());
  for (int i = 0; i < mesh.dof_count(); ++i) coeffs[i] = mesh.dof_coords[i];
  for (const Face& f : mesh.faces) {
    CHECK(one_sided_eval(mesh, basis, coeffs, f, Side::Left, 1) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one_sided_eval(mesh, basis, coeffs, f, Side::Right, 1) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
}

// Independent oracle: differentiate the two local quadratics symbolically
// from their nodal values (monomial form on the physical coordinate).
TEST_CASE("one-sided derivative jumps match direct polynomial differentiation") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  const Basis basis(BasisSpec{BasisFamily::LagrangeEquispaced, 2});
  const Mesh1D mesh = build_uniform_mesh(0.0, 3.0, 3, basis);
  std::vector<double> coeffs(mesh.dof_count());
  for (auto& c : coeffs) c = unif(rng);

  auto poly_deriv_at = [&](int e, double x) {
    // Quadratic through the three nodes (x0,v0), (x1,v1), (x2,v2):
    // derivative via Lagrange differentiation.
    const double x0 = mesh.dof_coords[mesh.dof(e, 0)];
    const double x1 = mesh.dof_coords[mesh.dof(e, 1)];
    const double x2 = mesh.dof_coords[mesh.dof(e, 2)];
    const double v0 = coeffs[mesh.dof(e, 0)];
    const double v1 = coeffs[mesh.dof(e, 1)];
    const double v2 = coeffs[mesh.dof(e, 2)];
    const double d0 = v0 * (2 * x - x1 - x2) / ((x0 - x1) * (x0 - x2));
    const double d1 = v1 * (2 * x - x0 - x2) / ((x1 - x0) * (x1 - x2));
    const double d2 = v2 * (2 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
    return d0 + d1 + d2;
  };

  for (const Face& f : mesh.faces) {
    const double left = one_sided_eval(mesh, basis, coeffs, f, Side::Left, 1);
    const double right = one_sided_eval(mesh, basis, coeffs, f, Side::Right, 1);
    const double oracle_left = poly_deriv_at(f.left_elem, f.x);
    const double oracle_right = poly_deriv_at(f.right_elem, f.x);
    CHECK(left == doctest::Approx(oracle_left).epsilon(1e-12));
    CHECK(right == doctest::Approx(oracle_right).epsilon(1e-12));
    CHECK(left - right == doctest::Approx(oracle_left - oracle_right).epsilon(1e-11));
  }
}

TEST_CASE("interpolated fields evaluate back to the sampled function") {
  const Basis basis(BasisSpec{BasisFamily::Bernstein, 3});
  const Mesh1D mesh = build_uniform_mesh(0.0, 25.0, 10, basis);
  auto f = [](double x) { return std::sin(0.3 * x) + 0.1 * x; };
  const auto coeffs = interpolate_scalar(mesh, basis, f);
  for (int i = 0; i < mesh.dof_count(); ++i)
    CHECK(eval_scalar(mesh, basis, coeffs, mesh.dof_coords[i]) ==
          doctest::Approx(f(mesh.dof_coords[i])).epsilon(1e-12));
}

TEST_SUITE_END();
