#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "swcip/basis.hpp"

using namespace swcip;

namespace {

const BasisSpec kAllSpecs[] = {
    {BasisFamily::Bernstein, 1},          {BasisFamily::Bernstein, 2},
    {BasisFamily::Bernstein, 3},          {BasisFamily::Bernstein, 4},
    {BasisFamily::LagrangeEquispaced, 1}, {BasisFamily::LagrangeEquispaced, 2},
    {BasisFamily::LagrangeEquispaced, 3}, {BasisFamily::LagrangeGaussLobatto, 1},
    {BasisFamily::LagrangeGaussLobatto, 2}, {BasisFamily::LagrangeGaussLobatto, 3},
    {BasisFamily::LagrangeGaussLobatto, 4}};

}  // namespace

TEST_SUITE_BEGIN("basis");

TEST_CASE("spec validation rejects unsupported configurations") {
  CHECK_THROWS_AS((BasisSpec{BasisFamily::Bernstein, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BasisSpec{BasisFamily::Bernstein, 5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BasisSpec{BasisFamily::LagrangeEquispaced, 4}.validate()),
                  std::invalid_argument);
  CHECK_NOTHROW((BasisSpec{BasisFamily::LagrangeGaussLobatto, 4}.validate()));
}

TEST_CASE("node layout: endpoints included, strictly increasing") {
  for (const auto& spec : kAllSpecs) {
    const Basis b(spec);
    REQUIRE(b.count() == spec.degree + 1);
    CHECK(b.nodes().front() == 0.0);
    CHECK(b.nodes().back() == 1.0);
    for (int k = 1; k < b.count(); ++k) CHECK(b.nodes()[k] > b.nodes()[k - 1]);
  }
}

TEST_CASE("pointwise values at fixed locations") {
  const Basis b1(BasisSpec{BasisFamily::Bernstein, 1});
  auto v = b1.eval(0, 0.5);
  CHECK(v[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(0.5).epsilon(1e-15));

  const Basis p2(BasisSpec{BasisFamily::LagrangeEquispaced, 2});
  v = p2.eval(0, 0.0);
  CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v[2] == doctest::Approx(0.0).epsilon(1e-15));

  // dB0 = -2(1-x), dB1 = 2-4x, dB2 = 2x at x = 1/2
  const Basis b2(BasisSpec{BasisFamily::Bernstein, 2});
  v = b2.eval(1, 0.5);
  CHECK(v[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(v[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(v[2] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eval input-domain errors") {
  const Basis b(BasisSpec{BasisFamily::Bernstein, 2});
  CHECK_THROWS_AS(b.eval(3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(b.eval(0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(b.eval(0, 1.1), std::invalid_argument);
}

TEST_CASE("partition of unity and derivative sums at random points") {
  std::mt19937 rng(2107);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& spec : kAllSpecs) {
    const Basis b(spec);
    for (int t = 0; t < 100; ++t) {
      const double xi = unif(rng);
      double s0 = 0.0, s1 = 0.0;
      const auto v0 = b.eval(0, xi);
      const auto v1 = b.eval(1, xi);
      for (int i = 0; i < b.count(); ++i) {
        s0 += v0[i];
        s1 += v1[i];
      }
      CHECK(std::abs(s0 - 1.0) <= 1e-14);
      CHECK(std::abs(s1) <= 1e-12);
    }
  }
}

TEST_CASE("first derivative matches centered differences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  const double step = 1e-6;
  for (const auto& spec : kAllSpecs) {
    const Basis b(spec);
    for (int t = 0; t < 20; ++t) {
      const double xi = unif(rng);
      const auto d = b.eval(1, xi);
      const auto lo = b.eval(0, xi - step);
      const auto hi = b.eval(0, xi + step);
      for (int i = 0; i < b.count(); ++i)
        CHECK(std::abs(d[i] - (hi[i] - lo[i]) / (2.0 * step)) <= 1e-7);
    }
  }
}

TEST_CASE("Gauss-Lobatto rules: tabulated low orders") {
  const auto r1 = gauss_lobatto_rule(2);
  CHECK(r1.points[0] == 0.0);
  CHECK(r1.points[1] == 1.0);
  CHECK(r1.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r1.weights[1] == doctest::Approx(0.5).epsilon(1e-15));

  const auto r2 = gauss_lobatto_rule(3);  // Simpson
  CHECK(r2.points[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(r2.weights[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("quadrature exactness as declared") {
  for (const auto& spec : kAllSpecs) {
    const Basis b(spec);
    const auto& rule = b.quadrature();
    if (spec.family == BasisFamily::LagrangeGaussLobatto) {
      CHECK(rule.exactness_degree == 2 * spec.degree - 1);
      // collocation points coincide with the basis nodes
      for (int k = 0; k < b.count(); ++k)
        CHECK(rule.points[k] == doctest::Approx(b.nodes()[k]).epsilon(1e-15));
    } else {
      CHECK(rule.exactness_degree == 2 * spec.degree + 1);
    }
    for (int k = 0; k <= rule.exactness_degree; ++k) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.points.size(); ++q)
        s += rule.weights[q] * std::pow(rule.points[q], k);
      CHECK(std::abs(s - 1.0 / (k + 1)) <= 1e-13);
    }
  }
  // exactness check from the rule used for Bernstein degree 2: integral of x^2
  const Basis b2(BasisSpec{BasisFamily::Bernstein, 2});
  double s = 0.0;
  for (std::size_t q = 0; q < b2.quadrature().points.size(); ++q)
    s += b2.quadrature().weights[q] * b2.quadrature().points[q] * b2.quadrature().points[q];
  CHECK(s == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("lumped masses") {
  const double h = 0.37;
  const Basis p1(BasisSpec{BasisFamily::LagrangeEquispaced, 1});
  auto c = p1.lumped_mass(h);
  CHECK(c[0] == doctest::Approx(h / 2).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(h / 2).epsilon(1e-14));

  const Basis b2(BasisSpec{BasisFamily::Bernstein, 2});
  c = b2.lumped_mass(h);
  for (double ci : c) CHECK(ci == doctest::Approx(h / 3).epsilon(1e-14));

  const Basis pgl2(BasisSpec{BasisFamily::LagrangeGaussLobatto, 2});
  c = pgl2.lumped_mass(h);
  CHECK(c[0] == doctest::Approx(h / 6).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(2 * h / 3).epsilon(1e-14));
  CHECK(c[2] == doctest::Approx(h / 6).epsilon(1e-14));

  for (const auto& spec : kAllSpecs) {
    const Basis b(spec);
    const auto masses = b.lumped_mass(h);
    double sum = 0.0;
    for (double ci : masses) {
      CHECK(ci > 0.0);
      sum += ci;
    }
    CHECK(std::abs(sum - h) <= 1e-13 * h);
  }
  CHECK_THROWS_AS(p1.lumped_mass(0.0), std::invalid_argument);
}

TEST_CASE("local mass matrices") {
  const double h = 1.7;
  const Basis p1(BasisSpec{BasisFamily::LagrangeEquispaced, 1});
  auto m = p1.local_mass_matrix(h);
  CHECK(m[0] == doctest::Approx(h / 3).epsilon(1e-14));
  CHECK(m[1] == doctest::Approx(h / 6).epsilon(1e-14));
  CHECK(m[2] == doctest::Approx(h / 6).epsilon(1e-14));
  CHECK(m[3] == doctest::Approx(h / 3).epsilon(1e-14));

  const Basis pgl2(BasisSpec{BasisFamily::LagrangeGaussLobatto, 2});
  m = pgl2.local_mass_matrix(h);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(std::abs(m[i * 3 + j]) <= 1e-15);
  CHECK(m[0] == doctest::Approx(h / 6).epsilon(1e-14));
  CHECK(m[4] == doctest::Approx(2 * h / 3).epsilon(1e-14));

  for (const auto& spec : kAllSpecs) {
    const Basis b(spec);
    const int n = b.count();
    const auto mm = b.local_mass_matrix(h);
    const auto lumped = b.lumped_mass(h);
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        row += mm[i * n + j];
        CHECK(mm[i * n + j] == doctest::Approx(mm[j * n + i]).epsilon(1e-13));
      }
      CHECK(row == doctest::Approx(lumped[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("interpolation coefficients") {
  // Cardinal families: identity.
  const Basis pgl3(BasisSpec{BasisFamily::LagrangeGaussLobatto, 3});
  const double vals[] = {0.3, -1.2, 2.5, 0.9};
  auto c = pgl3.interpolation_coefficients(std::span(vals, 4));
  for (int i = 0; i < 4; ++i) CHECK(c[i] == vals[i]);

  // Degree-1 Bernstein coincides with linear Lagrange.
  const Basis b1(BasisSpec{BasisFamily::Bernstein, 1});
  const double ab[] = {0.7, -0.2};
  c = b1.interpolation_coefficients(std::span(ab, 2));
  CHECK(c[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(-0.2).epsilon(1e-15));

  // Constants reproduce themselves for every family.
  for (const auto& spec : kAllSpecs) {
    const Basis b(spec);
    std::vector<double> ones(b.count(), 3.25);
    const auto cc = b.interpolation_coefficients(ones);
    for (double v : cc) CHECK(v == doctest::Approx(3.25).epsilon(1e-14));
  }
}

TEST_CASE("interpolate-then-evaluate round trip on random data") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (const auto& spec : kAllSpecs) {
    const Basis b(spec);
    for (int t = 0; t < 25; ++t) {
      std::vector<double> vals(b.count());
      for (auto& v : vals) v = unif(rng);
      const auto coef = b.interpolation_coefficients(vals);
      std::vector<double> back(b.count());
      b.nodal_values(coef, back);
      for (int k = 0; k < b.count(); ++k)
        CHECK(back[k] == doctest::Approx(vals[k]).epsilon(1e-13));
      // evaluating the combination at the nodes gives the same thing
      for (int k = 0; k < b.count(); ++k) {
        const auto phi = b.eval(0, b.nodes()[k]);
        double s = 0.0;
        for (int j = 0; j < b.count(); ++j) s += coef[j] * phi[j];
        CHECK(s == doctest::Approx(vals[k]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("antiderivative tables are consistent with the lumped integrals") {
  for (const auto& spec : kAllSpecs) {
    const Basis b(spec);
    for (int i = 0; i < b.count(); ++i) {
      CHECK(b.antiderivative(i, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
      CHECK(b.antiderivative(i, 1.0) == doctest::Approx(b.lumped_ref(i)).epsilon(1e-12));
    }
  }
}

TEST_SUITE_END();
