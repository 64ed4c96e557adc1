#ifndef SWCIP_TEST_HELPERS_HPP
#define SWCIP_TEST_HELPERS_HPP

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "swcip/field.hpp"
#include "swcip/mesh.hpp"

namespace swcip::testing {

inline const std::vector<BasisSpec>& all_specs() {
  static const std::vector<BasisSpec> specs = {
      {BasisFamily::Bernstein, 1},          {BasisFamily::Bernstein, 2},
      {BasisFamily::Bernstein, 3},          {BasisFamily::Bernstein, 4},
      {BasisFamily::LagrangeEquispaced, 1}, {BasisFamily::LagrangeEquispaced, 2},
      {BasisFamily::LagrangeEquispaced, 3}, {BasisFamily::LagrangeGaussLobatto, 1},
      {BasisFamily::LagrangeGaussLobatto, 2}, {BasisFamily::LagrangeGaussLobatto, 3},
      {BasisFamily::LagrangeGaussLobatto, 4}};
  return specs;
}

/// Machine-exact lake-at-rest coefficients: interpolate eta_bar - B.
inline SolutionField rest_state(const Mesh1D& mesh, const Basis& basis, const Bathymetry& bathy,
                                double eta_bar) {
  return interpolate_state(mesh, basis,
                           [&](double x) -> Vec2 { return {eta_bar - bathy.value(x), 0.0}; });
}

/// Random positive-height coefficient field (wet everywhere by construction).
inline SolutionField random_state(const Mesh1D& mesh, std::mt19937& rng, double h_lo = 0.5,
                                  double h_hi = 2.0, double q_amp = 2.0) {
  std::uniform_real_distribution<double> h(h_lo, h_hi);
  std::uniform_real_distribution<double> q(-q_amp, q_amp);
  SolutionField state(mesh.dof_count());
  for (auto& u : state) u = {h(rng), q(rng)};
  return state;
}

/// Exact rational arithmetic for the subtimenode-integral oracle.
struct Frac {
  long long n = 0, d = 1;

  static Frac of(long long num, long long den) {
    Frac f{num, den};
    f.reduce();
    return f;
  }
  void reduce() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = std::gcd(std::abs(n), d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
  Frac operator+(const Frac& o) const { return of(n * o.d + o.n * d, d * o.d); }
  Frac operator*(const Frac& o) const { return of(n * o.n, d * o.d); }
  double value() const { return static_cast<double>(n) / static_cast<double>(d); }
};

/// Integral over [0, m/M] of the l-th Lagrange polynomial on the nodes
/// {k/M}, evaluated with exact fractions: an oracle independent of the
/// quadrature used by the library.
inline double theta_oracle(int M, int m, int l) {
  std::vector<Frac> poly = {Frac::of(1, 1)};  // coefficients, low order first
  Frac denom = Frac::of(1, 1);
  for (int k = 0; k <= M; ++k) {
    if (k == l) continue;
    // multiply by (tau - k/M)
    std::vector<Frac> next(poly.size() + 1, Frac::of(0, 1));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] = next[j + 1] + poly[j];
      next[j] = next[j] + poly[j] * Frac::of(-k, M);
    }
    poly = std::move(next);
    denom = denom * Frac::of(l - k, M);
  }
  Frac result = Frac::of(0, 1);
  Frac power = Frac::of(m, M);
  for (std::size_t j = 0; j < poly.size(); ++j) {
    result = result + poly[j] * Frac::of(1, static_cast<long long>(j) + 1) * power;
    power = power * Frac::of(m, M);
  }
  const Frac inv_denom = Frac::of(denom.d, denom.n);
  return (result * inv_denom).value();
}

}  // namespace swcip::testing

#endif
