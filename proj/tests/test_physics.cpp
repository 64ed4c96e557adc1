#include <cmath>
#include <random>

#include "doctest.h"
#include "swcip/physics.hpp"

using namespace swcip;

namespace {

Vec2 random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> h(0.2, 3.0);
  std::uniform_real_distribution<double> q(-10.0, 10.0);
  return {h(rng), q(rng)};
}

}  // namespace

TEST_SUITE_BEGIN("physics");

TEST_CASE("flux values and split identity") {
  const PhysParams p{9.81, 0.0};
  const Vec2 u{2.0, 24.0};
  const Vec2 f = swe::flux(u, p);
  CHECK(f[0] == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(f[1] == doctest::Approx(307.62).epsilon(1e-14));

  const Vec2 rest{1.3, 0.0};
  const Vec2 fr = swe::flux(rest, p);
  CHECK(fr[0] == 0.0);
  CHECK(fr[1] == doctest::Approx(0.5 * 9.81 * 1.69).epsilon(1e-14));

  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Vec2 s = random_state(rng);
    const Vec2 total = swe::flux(s, p);
    const Vec2 split = swe::flux_velocity_part(s, p) + swe::flux_hydrostatic_part(s, p);
    CHECK(split[0] == doctest::Approx(total[0]).epsilon(1e-14));
    CHECK(split[1] == doctest::Approx(total[1]).epsilon(1e-14));
  }
  CHECK_THROWS_AS(swe::flux({0.0, 1.0}, p), std::domain_error);
}

TEST_CASE("source values and split identity") {
  const PhysParams p{9.81, 0.03};
  CHECK(swe::source({1.0, 5.0}, 0.0, PhysParams{9.81, 0.0})[1] == 0.0);
  CHECK(swe::source({2.0, 0.0}, 0.0, p)[1] == 0.0);  // no flow, no friction

  const Vec2 s = swe::source({1.0, 1.0}, 0.0, p);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == doctest::Approx(-8.829e-3).epsilon(1e-12));

  std::mt19937 rng(4);
  std::uniform_real_distribution<double> slope(-0.3, 0.3);
  for (int t = 0; t < 50; ++t) {
    const Vec2 u = random_state(rng);
    const double db = slope(rng);
    const Vec2 total = swe::source(u, db, p);
    const Vec2 split = swe::source_velocity_part(u, p) + swe::source_hydrostatic_part(u, db, p);
    CHECK(split[1] == doctest::Approx(total[1]).epsilon(1e-14));
  }
}

TEST_CASE("jacobian structure and finite-difference oracle") {
  const PhysParams p{9.81, 0.0};
  std::mt19937 rng(12);
  for (int t = 0; t < 30; ++t) {
    const Vec2 u = random_state(rng);
    const Mat2 jac = swe::jacobian(u, p);
    CHECK(jac(0, 0) == 0.0);
    CHECK(jac(0, 1) == 1.0);
    const double eps = 1e-6;
    for (int col = 0; col < 2; ++col) {
      Vec2 up = u, dn = u;
      up[col] += eps;
      dn[col] -= eps;
      const Vec2 diff = swe::flux(up, p) - swe::flux(dn, p);
      for (int row = 0; row < 2; ++row) {
        const double fd = diff[row] / (2.0 * eps);
        CHECK(jac(row, col) == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("eigensystem reconstructs the jacobian") {
  const PhysParams p{9.81, 0.0};
  CHECK(swe::eigen({1.0, 0.0}, p).lambda[1] == doctest::Approx(std::sqrt(9.81)).epsilon(1e-14));
  CHECK(swe::eigen({1.0, 0.0}, p).lambda[0] == doctest::Approx(-std::sqrt(9.81)).epsilon(1e-14));

  std::mt19937 rng(21);
  for (int t = 0; t < 50; ++t) {
    const Vec2 u = random_state(rng);
    const auto es = swe::eigen(u, p);
    Mat2 lam;
    lam(0, 0) = es.lambda[0];
    lam(1, 1) = es.lambda[1];
    const Mat2 back = es.right * lam * es.right_inv;
    const Mat2 jac = swe::jacobian(u, p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(back(i, j) == doctest::Approx(jac(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("spectral radius") {
  const PhysParams p{9.81, 0.0};
  CHECK(swe::spectral_radius({1.0, 0.0}, p) == doctest::Approx(std::sqrt(9.81)).epsilon(1e-15));
  CHECK(swe::spectral_radius({2.0, 24.0}, p) ==
        doctest::Approx(12.0 + std::sqrt(19.62)).epsilon(1e-15));
  std::mt19937 rng(31);
  for (int t = 0; t < 30; ++t) {
    const Vec2 u = random_state(rng);
    const auto es = swe::eigen(u, p);
    const double rho = swe::spectral_radius(u, p);
    CHECK(rho == doctest::Approx(std::max(std::abs(es.lambda[0]), std::abs(es.lambda[1])))
                     .epsilon(1e-14));
    CHECK(rho >= swe::sound_speed(u, p));
  }
}

TEST_CASE("inverse of |J|: exact inverse away from sonic states") {
  const PhysParams p{9.81, 0.0};
  // v = 0: |J| = c * I, so the inverse is I / c.
  const Vec2 rest{1.7, 0.0};
  const Mat2 binv = swe::abs_jacobian_inverse(rest, p, 0.05);
  const double c = swe::sound_speed(rest, p);
  CHECK(binv(0, 0) == doctest::Approx(1.0 / c).epsilon(1e-13));
  CHECK(binv(1, 1) == doctest::Approx(1.0 / c).epsilon(1e-13));
  CHECK(std::abs(binv(0, 1)) <= 1e-14);
  CHECK(std::abs(binv(1, 0)) <= 1e-14);

  std::mt19937 rng(41);
  std::uniform_real_distribution<double> h(0.5, 3.0);
  for (int t = 0; t < 40; ++t) {
    // strongly supercritical states keep |lambda| above the fix threshold
    Vec2 u{h(rng), 0.0};
    u[1] = 3.0 * u[0] * swe::sound_speed(u, p);
    const auto es = swe::eigen(u, p);
    Mat2 absj;
    Mat2 lam;
    lam(0, 0) = std::abs(es.lambda[0]);
    lam(1, 1) = std::abs(es.lambda[1]);
    absj = es.right * lam * es.right_inv;
    const Mat2 prod = swe::abs_jacobian_inverse(u, p, 0.05) * absj;
    CHECK(prod(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prod(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(prod(0, 1)) <= 1e-12 * std::abs(lam(1, 1)));
    CHECK(std::abs(prod(1, 0)) <= 1e-12 * std::abs(lam(1, 1)));
  }
}

TEST_CASE("inverse of |J| stays finite at the sonic point") {
  const PhysParams p{9.81, 0.0};
  Vec2 u{1.0, 0.0};
  u[1] = u[0] * swe::sound_speed(u, p);  // v = c exactly, lambda_1 = 0
  const Mat2 binv = swe::abs_jacobian_inverse(u, p, 0.05);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::isfinite(binv(i, j)));
  // The smoothed magnitude of the zero eigenvalue is threshold/2, so the
  // matrix norm is bounded by roughly 2/(fix * rho).
  const double rho = swe::spectral_radius(u, p);
  double norm = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) norm = std::max(norm, std::abs(binv(i, j)));
  CHECK(norm <= 2.0 / (0.05 * rho) * 1.01);
}

TEST_CASE("entropy variables and their jacobian") {
  const PhysParams p{9.81, 0.0};
  const Vec2 rest{1.2, 0.0};
  const Vec2 w = swe::entropy_vars(rest, 0.3, p);
  CHECK(w[0] == doctest::Approx(9.81 * 1.5).epsilon(1e-14));
  CHECK(w[1] == 0.0);

  const Mat2 a0 = swe::entropy_to_conserved_jacobian(rest, p);
  CHECK(a0(0, 0) == doctest::Approx(1.0 / 9.81).epsilon(1e-14));
  CHECK(a0(0, 1) == 0.0);
  CHECK(a0(1, 0) == 0.0);
  CHECK(a0(1, 1) == doctest::Approx(1.2).epsilon(1e-14));

  std::mt19937 rng(51);
  for (int t = 0; t < 30; ++t) {
    const Vec2 u = random_state(rng);
    const Mat2 a = swe::entropy_to_conserved_jacobian(u, p);
    CHECK(a(0, 1) == doctest::Approx(a(1, 0)).epsilon(1e-15));

    // w round trip at fixed bathymetry: recover (H, q) from (w1, w2)
    const double b = 0.17;
    const Vec2 w2 = swe::entropy_vars(u, b, p);
    const double v = w2[1];
    const double h = (w2[0] + 0.5 * v * v) / p.g - b;
    CHECK(h == doctest::Approx(u[0]).epsilon(1e-12));
    CHECK(h * v == doctest::Approx(u[1]).epsilon(1e-12));
  }
}

TEST_CASE("bathymetry shapes") {
  const Bathymetry smooth = Bathymetry::smooth_bump();
  CHECK(smooth.value(10.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(smooth.value(5.0) == 0.0);
  CHECK(smooth.value(15.0) == 0.0);
  CHECK(smooth.value(2.0) == 0.0);
  CHECK(smooth.slope(10.0) == doctest::Approx(0.0).epsilon(1e-15));

  // centered finite-difference check for the smooth slope
  for (double x : {6.0, 8.5, 11.2, 14.0}) {
    const double eps = 1e-7;
    const double fd = (smooth.value(x + eps) - smooth.value(x - eps)) / (2 * eps);
    CHECK(smooth.slope(x) == doctest::Approx(fd).epsilon(1e-6));
  }

  const Bathymetry c0 = Bathymetry::c0_parabola();
  CHECK(c0.value(10.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(c0.value(8.0) == 0.0);
  CHECK(c0.value(9.0) == doctest::Approx(0.2 - 0.05).epsilon(1e-15));
  CHECK(c0.slope(9.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(c0.crest() == 10.0);
  CHECK(c0.max_value() == doctest::Approx(0.2).epsilon(1e-15));

  const Bathymetry tab = Bathymetry::tabulated({0.0, 1.0, 3.0}, {0.0, 0.5, 0.0});
  CHECK(tab.value(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(tab.value(2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(tab.slope(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tab.crest() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(Bathymetry::tabulated({1.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_SUITE_END();
