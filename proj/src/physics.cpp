#include "swcip/physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swcip {

void PhysParams::validate() const {
  if (!(g > 0.0)) throw std::invalid_argument("physics: g must be positive");
  if (manning < 0.0) throw std::invalid_argument("physics: Manning coefficient must be nonnegative");
}

namespace swe {

void require_wet(const Vec2& u) {
  if (!(u[0] > 0.0)) throw std::domain_error("physics: dry state (H <= 0) unsupported");
}

double velocity(const Vec2& u) {
  require_wet(u);
  return u[1] / u[0];
}

double sound_speed(const Vec2& u, const PhysParams& p) {
  require_wet(u);
  return std::sqrt(p.g * u[0]);
}

double spectral_radius(const Vec2& u, const PhysParams& p) {
  return std::abs(velocity(u)) + sound_speed(u, p);
}

Vec2 flux(const Vec2& u, const PhysParams& p) {
  require_wet(u);
  return {u[1], u[1] * u[1] / u[0] + 0.5 * p.g * u[0] * u[0]};
}

Vec2 flux_velocity_part(const Vec2& u, const PhysParams&) {
  require_wet(u);
  return {u[1], u[1] * u[1] / u[0]};
}

Vec2 flux_hydrostatic_part(const Vec2& u, const PhysParams& p) {
  require_wet(u);
  return {0.0, 0.5 * p.g * u[0] * u[0]};
}

Vec2 source(const Vec2& u, double dBdx, const PhysParams& p) {
  return source_velocity_part(u, p) + source_hydrostatic_part(u, dBdx, p);
}

Vec2 source_velocity_part(const Vec2& u, const PhysParams& p) {
  require_wet(u);
  if (p.manning == 0.0) return {0.0, 0.0};
  const double friction =
      p.g * p.manning * p.manning * std::abs(u[1]) * u[1] / std::pow(u[0], 7.0 / 3.0);
  return {0.0, -friction};
}

Vec2 source_hydrostatic_part(const Vec2& u, double dBdx, const PhysParams& p) {
  require_wet(u);
  return {0.0, -p.g * u[0] * dBdx};
}

Mat2 jacobian(const Vec2& u, const PhysParams& p) {
  const double v = velocity(u);
  return {0.0, 1.0, p.g * u[0] - v * v, 2.0 * v};
}

EigenSystem eigen(const Vec2& u, const PhysParams& p) {
  const double v = velocity(u);
  const double c = sound_speed(u, p);
  EigenSystem es;
  es.lambda = {v - c, v + c};
  es.right = {1.0, 1.0, v - c, v + c};
  const double inv2c = 0.5 / c;
  es.right_inv = {(v + c) * inv2c, -inv2c, -(v - c) * inv2c, inv2c};
  return es;
}

Mat2 abs_jacobian_inverse(const Vec2& u, const PhysParams& p, double fix_fraction) {
  const EigenSystem es = eigen(u, p);
  const double rho = std::abs(velocity(u)) + sound_speed(u, p);
  const double threshold = fix_fraction * rho;
  Vec2 inv_abs;
  for (int k = 0; k < 2; ++k) {
    double a = std::abs(es.lambda[k]);
    if (threshold > 0.0 && a < threshold)
      a = (es.lambda[k] * es.lambda[k] + threshold * threshold) / (2.0 * threshold);
    inv_abs[k] = 1.0 / a;
  }
  Mat2 d;
  d(0, 0) = inv_abs[0];
  d(1, 1) = inv_abs[1];
  return es.right * d * es.right_inv;
}

Vec2 entropy_vars(const Vec2& u, double b, const PhysParams& p) {
  const double v = velocity(u);
  return {p.g * (u[0] + b) - 0.5 * v * v, v};
}

Mat2 entropy_to_conserved_jacobian(const Vec2& u, const PhysParams& p) {
  const double v = velocity(u);
  return {1.0 / p.g, v / p.g, v / p.g, u[0] + v * v / p.g};
}

}  // namespace swe

Bathymetry Bathymetry::flat() {
  Bathymetry b;
  b.kind_ = BathymetryKind::Flat;
  return b;
}

Bathymetry Bathymetry::smooth_bump() {
  Bathymetry b;
  b.kind_ = BathymetryKind::SmoothBump;
  return b;
}

Bathymetry Bathymetry::c0_parabola() {
  Bathymetry b;
  b.kind_ = BathymetryKind::C0Parabola;
  return b;
}

Bathymetry Bathymetry::tabulated(std::vector<double> xs, std::vector<double> values) {
  if (xs.size() < 2 || xs.size() != values.size())
    throw std::invalid_argument("bathymetry: table needs at least two (x, B) pairs");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("bathymetry: table abscissae must increase");
  Bathymetry b;
  b.kind_ = BathymetryKind::Tabulated;
  b.xs_ = std::move(xs);
  b.values_ = std::move(values);
  return b;
}

double Bathymetry::value(double x) const {
  switch (kind_) {
    case BathymetryKind::Flat:
      return 0.0;
    case BathymetryKind::SmoothBump: {
      if (!(x > 5.0 && x < 15.0)) return 0.0;
      const double s = (x - 10.0) / 5.0;
      return 0.2 * std::exp(1.0 - 1.0 / (1.0 - s * s));
    }
    case BathymetryKind::C0Parabola: {
      if (!(x > 8.0 && x < 12.0)) return 0.0;
      return 0.2 - 0.05 * (x - 10.0) * (x - 10.0);
    }
    case BathymetryKind::Tabulated: {
      if (x <= xs_.front()) return values_.front();
      if (x >= xs_.back()) return values_.back();
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
      const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
      return values_[i - 1] + t * (values_[i] - values_[i - 1]);
    }
  }
  return 0.0;
}

double Bathymetry::slope(double x) const { return slope(x, x); }

double Bathymetry::slope(double x, double interior_hint) const {
  switch (kind_) {
    case BathymetryKind::Flat:
      return 0.0;
    case BathymetryKind::SmoothBump: {
      // all derivatives vanish in the limit toward the edges
      if (!(x > 5.0 && x < 15.0)) return 0.0;
      const double s = (x - 10.0) / 5.0;
      const double d = 1.0 - s * s;
      return value(x) * (-2.0 * s / (5.0 * d * d));
    }
    case BathymetryKind::C0Parabola: {
      if (!(interior_hint > 8.0 && interior_hint < 12.0)) return 0.0;
      if (!(x >= 8.0 && x <= 12.0)) return 0.0;
      return -0.1 * (x - 10.0);
    }
    case BathymetryKind::Tabulated: {
      if (interior_hint <= xs_.front() || interior_hint >= xs_.back()) return 0.0;
      auto it = std::upper_bound(xs_.begin(), xs_.end(), interior_hint);
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
      return (values_[i] - values_[i - 1]) / (xs_[i] - xs_[i - 1]);
    }
  }
  return 0.0;
}

std::vector<double> Bathymetry::breakpoints() const {
  switch (kind_) {
    case BathymetryKind::Flat:
      return {};
    case BathymetryKind::SmoothBump:
      return {5.0, 15.0};  // slope continuous but flat outside; harmless split points
    case BathymetryKind::C0Parabola:
      return {8.0, 12.0};
    case BathymetryKind::Tabulated:
      return std::vector<double>(xs_.begin() + 1, xs_.end() - 1);
  }
  return {};
}

double Bathymetry::crest() const {
  switch (kind_) {
    case BathymetryKind::Flat:
      throw std::invalid_argument("bathymetry: flat bottom has no crest");
    case BathymetryKind::SmoothBump:
    case BathymetryKind::C0Parabola:
      return 10.0;
    case BathymetryKind::Tabulated: {
      const std::size_t i = static_cast<std::size_t>(
          std::max_element(values_.begin(), values_.end()) - values_.begin());
      return xs_[i];
    }
  }
  return 0.0;
}

double Bathymetry::max_value() const {
  switch (kind_) {
    case BathymetryKind::Flat:
      return 0.0;
    case BathymetryKind::SmoothBump:
    case BathymetryKind::C0Parabola:
      return 0.2;
    case BathymetryKind::Tabulated:
      return *std::max_element(values_.begin(), values_.end());
  }
  return 0.0;
}

std::string to_string(BathymetryKind kind) {
  switch (kind) {
    case BathymetryKind::Flat:
      return "flat";
    case BathymetryKind::SmoothBump:
      return "smooth";
    case BathymetryKind::C0Parabola:
      return "c0";
    case BathymetryKind::Tabulated:
      return "tabulated";
  }
  return "?";
}

}  // namespace swcip
