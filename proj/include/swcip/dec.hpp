#ifndef SWCIP_DEC_HPP
#define SWCIP_DEC_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swcip/mesh.hpp"
#include "swcip/physics.hpp"

namespace swcip {

/// Normalized integrals of the Lagrange polynomials on M+1 equispaced
/// subtimenodes: theta(m, l) is the integral of psi_l over [0, m/M].
struct ThetaTable {
  int subintervals = 0;
  std::vector<std::vector<double>> theta;  // [m-1][l], m = 1..M, l = 0..M
  std::vector<double> beta;                // m/M
};

/// Exact Gauss-Legendre evaluation of the theta integrals, 1 <= M <= 6.
ThetaTable theta_coefficients(int M);

/// Fixed-node iterations keep all M+1 subtimenodes from the start; the
/// growing-node variant enlarges the subtimenode set as the iteration
/// accuracy grows, skipping the interpolation at the first and last
/// iterations.
enum class DecVariant { FixedNodes, GrowingNodes };

std::string to_string(DecVariant variant);

struct DecConfig {
  int subintervals = 1;  // M; the method order is M+1
  int iterations = 0;    // P; 0 selects the default M+1
  DecVariant variant = DecVariant::GrowingNodes;
};

/// Prescribed conserved components at the domain endpoints, overwritten
/// after every subtimenode update.
struct BoundaryCondition {
  std::optional<double> left_H;
  std::optional<double> left_q;
  std::optional<double> right_H;
  std::optional<double> right_q;

  void validate() const;
};

void apply_strong_bc(SolutionField& state, const BoundaryCondition& bc);

/// Element-assembled action of the global mass matrix (no inversion
/// anywhere; the explicit update only needs products). Owns copies of the
/// mesh and basis, so it has plain value semantics.
class MassOperator {
 public:
  MassOperator(Mesh1D mesh, Basis basis);

  const std::vector<double>& lumped() const { return lumped_; }
  /// out_i = sum_j M_ij (a_j - b_j)
  void apply_difference(const SolutionField& a, const SolutionField& b, SolutionField& out) const;

 private:
  Mesh1D mesh_;
  Basis basis_;
  std::vector<double> lumped_;
};

/// Evaluates the spatial terms (space residual plus stabilization) for a
/// coefficient vector.
using ResidualFn = std::function<void(const SolutionField&, SolutionField&)>;

/// Thrown when an update produces a non-finite or dry state; callers may
/// retry with a smaller step.
struct StepFailure : std::runtime_error {
  explicit StepFailure(const std::string& what) : std::runtime_error(what) {}
};

/// One explicit deferred-correction step from state_n over dt.
SolutionField bdec_step(const SolutionField& state_n, double dt, const ResidualFn& residual,
                        const DecConfig& config, const MassOperator& mass,
                        const BoundaryCondition& bc);

/// The subtimenode-growing variant; identical interface.
SolutionField bdecu_step(const SolutionField& state_n, double dt, const ResidualFn& residual,
                         const DecConfig& config, const MassOperator& mass,
                         const BoundaryCondition& bc);

SolutionField dec_step(const SolutionField& state_n, double dt, const ResidualFn& residual,
                       const DecConfig& config, const MassOperator& mass,
                       const BoundaryCondition& bc);

/// dt = cfl * min over elements of dx / (max nodal |v| + c).
double compute_dt(double cfl, const Mesh1D& mesh, const Basis& basis, const SolutionField& state,
                  const PhysParams& params);

}  // namespace swcip

#endif
