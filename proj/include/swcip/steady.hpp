#ifndef SWCIP_STEADY_HPP
#define SWCIP_STEADY_HPP

#include <functional>
#include <string>
#include <vector>

#include "swcip/dec.hpp"
#include "swcip/field.hpp"

namespace swcip {

enum class FlowRegime { LakeAtRest, Supercritical, Subcritical, Transcritical };

std::string to_string(FlowRegime regime);

/// Exact (frictionless) or ODE-integrated (with Manning friction) steady
/// solution sampler. Frictionless moving equilibria have constant momentum
/// and energy; the water height solves the energy cubic
///   g H^3 + (g B(x) - E) H^2 + q^2/2 = 0
/// on the branch selected by the regime, with the branch switch at the
/// bathymetry crest for transcritical flows.
class SteadyReference {
 public:
  static SteadyReference lake_at_rest(double eta_bar, const Bathymetry& bathy,
                                      const PhysParams& params);
  static SteadyReference supercritical(double q_bar, double h_left, const Bathymetry& bathy,
                                       const PhysParams& params, double x_left);
  static SteadyReference subcritical(double q_bar, double h_right, const Bathymetry& bathy,
                                     const PhysParams& params, double x_right);
  static SteadyReference transcritical(double q_bar, const Bathymetry& bathy,
                                       const PhysParams& params);

  /// Fourth-order integration of the friction-steady ODE
  ///   dH/dx = (-g dB/dx - g n^2 |q| q H^(-10/3)) / (g - q^2 / H^3)
  /// left to right for supercritical flows, right to left for subcritical
  /// ones, split at the bathymetry kinks. Sampling interpolates the stored
  /// trajectory with cubic Hermite pieces.
  static SteadyReference friction_ode(FlowRegime regime, double q_bar, double h_datum,
                                      double manning, const Bathymetry& bathy,
                                      const PhysParams& params, double x_left, double x_right,
                                      int substeps = 1 << 15);

  FlowRegime regime() const { return regime_; }
  double momentum() const { return q_bar_; }
  /// Constant specific energy (frictionless regimes only).
  double energy() const { return energy_; }
  double manning() const { return manning_; }

  Vec2 sample(double x) const;
  std::function<Vec2(double)> sampler() const;

  /// Strong boundary data for the regime: both components upstream for
  /// supercritical flows, momentum upstream and height downstream for
  /// subcritical ones, momentum upstream only for transcritical ones, and
  /// everything for the lake at rest.
  BoundaryCondition boundary_condition(double x_left, double x_right) const;

 private:
  double solve_height(double x, bool subcritical_branch) const;

  FlowRegime regime_ = FlowRegime::LakeAtRest;
  double q_bar_ = 0.0;
  double energy_ = 0.0;
  double eta_bar_ = 0.0;
  double manning_ = 0.0;
  Bathymetry bathy_;
  PhysParams params_;
  // friction trajectory (x ascending) with per-interval one-sided slopes
  // for Hermite sampling
  std::vector<double> traj_x_, traj_h_, traj_dh_left_, traj_dh_right_;
};

struct ErrorNorms {
  double l1_H = 0.0;
  double l1_q = 0.0;
  double linf_H = 0.0;
  double linf_q = 0.0;
};

/// Per-component L1 norms of u_h minus the reference, via 10-point
/// Gauss-Legendre over-integration per element, summed left to right.
/// The max norms are taken over the same sample points.
ErrorNorms l1_error(const SolutionField& state, const std::function<Vec2(double)>& reference,
                    const Mesh1D& mesh, const Basis& basis);
ErrorNorms l1_error(const SolutionField& state, const SteadyReference& reference,
                    const Mesh1D& mesh, const Basis& basis);

}  // namespace swcip

#endif
