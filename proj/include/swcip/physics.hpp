#ifndef SWCIP_PHYSICS_HPP
#define SWCIP_PHYSICS_HPP

#include <string>
#include <vector>

#include "swcip/linalg.hpp"

namespace swcip {

/// Gravitational acceleration and Manning friction coefficient.
struct PhysParams {
  double g = 9.81;
  double manning = 0.0;

  void validate() const;
};

/// Pointwise shallow-water algebra on a conserved state (H, q). Dry states
/// (H <= 0) are rejected everywhere: none of the supported setups reach
/// them, and the flux split is undefined there.
namespace swe {

void require_wet(const Vec2& u);

double velocity(const Vec2& u);
double sound_speed(const Vec2& u, const PhysParams& p);
/// |v| + c, the largest wave speed.
double spectral_radius(const Vec2& u, const PhysParams& p);

Vec2 flux(const Vec2& u, const PhysParams& p);
Vec2 flux_velocity_part(const Vec2& u, const PhysParams& p);
Vec2 flux_hydrostatic_part(const Vec2& u, const PhysParams& p);

/// Full source -(0, g H dBdx + g n^2 |q| q / H^(7/3)).
Vec2 source(const Vec2& u, double dBdx, const PhysParams& p);
/// Friction-only part -(0, g n^2 |q| q / H^(7/3)).
Vec2 source_velocity_part(const Vec2& u, const PhysParams& p);
/// Bathymetry-only part -(0, g H dBdx).
Vec2 source_hydrostatic_part(const Vec2& u, double dBdx, const PhysParams& p);

Mat2 jacobian(const Vec2& u, const PhysParams& p);

struct EigenSystem {
  Mat2 right;      // columns are right eigenvectors
  Vec2 lambda;     // v - c, v + c
  Mat2 right_inv;
};
EigenSystem eigen(const Vec2& u, const PhysParams& p);

/// Inverse of |J| = R |Lambda| R^-1 with a Harten-type smoothing of the
/// eigenvalue magnitudes: |l| below fix_fraction * (|v|+c) is replaced by
/// (l^2 + t^2)/(2t) with t = fix_fraction * (|v|+c), keeping the inverse
/// bounded through sonic states.
Mat2 abs_jacobian_inverse(const Vec2& u, const PhysParams& p, double fix_fraction);

/// Entropy variables (g(H+B) - v^2/2, v).
Vec2 entropy_vars(const Vec2& u, double b, const PhysParams& p);
/// Jacobian du/dw at flat bathymetry, [[1/g, v/g], [v/g, H + v^2/g]].
Mat2 entropy_to_conserved_jacobian(const Vec2& u, const PhysParams& p);

}  // namespace swe

enum class BathymetryKind { Flat, SmoothBump, C0Parabola, Tabulated };

/// Bottom topography. The two analytic shapes are the compactly supported
/// C-infinity bump on (5,15) with amplitude 0.2 and the C0 parabolic hump
/// 0.2 - 0.05 (x-10)^2 on (8,12).
class Bathymetry {
 public:
  static Bathymetry flat();
  static Bathymetry smooth_bump();
  static Bathymetry c0_parabola();
  static Bathymetry tabulated(std::vector<double> xs, std::vector<double> values);

  BathymetryKind kind() const { return kind_; }

  double value(double x) const;
  /// Analytic slope; at the C0 kinks the outside value (zero) is used.
  double slope(double x) const;
  /// One-sided slope: evaluates the analytic piece that contains
  /// interior_hint, so kink points get the correct directional limit.
  double slope(double x, double interior_hint) const;

  /// x locations where the slope is discontinuous (used to split ODE
  /// integrations into smooth pieces).
  std::vector<double> breakpoints() const;
  /// Location of the highest point (branch-switch point of transcritical
  /// steady states).
  double crest() const;
  double max_value() const;

 private:
  BathymetryKind kind_ = BathymetryKind::Flat;
  std::vector<double> xs_;
  std::vector<double> values_;
};

std::string to_string(BathymetryKind kind);

}  // namespace swcip

#endif
