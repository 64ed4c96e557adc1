#include "swcip/dec.hpp"

#include <algorithm>
#include <cmath>

#include "swcip/field.hpp"

namespace swcip {

namespace {

constexpr int kMaxSubintervals = 6;

std::vector<std::vector<double>> lagrange_on_equispaced(int M, std::span<const double> eval_at) {
  // weights[t][l]: value of the l-th Lagrange polynomial on nodes {l/M} at
  // eval_at[t].
  std::vector<std::vector<double>> w(eval_at.size(), std::vector<double>(M + 1, 1.0));
  for (std::size_t t = 0; t < eval_at.size(); ++t)
    for (int l = 0; l <= M; ++l) {
      const double xl = static_cast<double>(l) / M;
      for (int k = 0; k <= M; ++k) {
        if (k == l) continue;
        const double xk = static_cast<double>(k) / M;
        w[t][l] *= (eval_at[t] - xk) / (xl - xk);
      }
    }
  return w;
}

void check_finite(const SolutionField& state, int iteration, int stage) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!std::isfinite(state[i][0]) || !std::isfinite(state[i][1]) || state[i][0] <= 0.0)
      throw StepFailure("dec: non-finite or dry state at DoF " + std::to_string(i) +
                        " (iteration " + std::to_string(iteration) + ", subtimenode " +
                        std::to_string(stage) + ")");
  }
}

const ThetaTable& cached_theta(int M) {
  static std::vector<ThetaTable> cache = [] {
    std::vector<ThetaTable> c;
    for (int m = 1; m <= kMaxSubintervals; ++m) c.push_back(theta_coefficients(m));
    return c;
  }();
  return cache[M - 1];
}

// Shared update loop: one correction sweep over the current subtimenode set.
void correction_sweep(std::vector<SolutionField>& stages,
                      const std::vector<SolutionField>& residuals, const ThetaTable& table,
                      double dt, const MassOperator& mass, const BoundaryCondition& bc,
                      SolutionField& mass_diff, int iteration) {
  const int M = table.subintervals;
  const std::vector<double>& lumped = mass.lumped();
  const std::size_t dofs = stages[0].size();
  for (int m = 1; m <= M; ++m) {
    mass.apply_difference(stages[m], stages[0], mass_diff);
    for (std::size_t i = 0; i < dofs; ++i) {
      Vec2 acc = mass_diff[i];
      for (int l = 0; l <= M; ++l) acc += (dt * table.theta[m - 1][l]) * residuals[l][i];
      stages[m][i] -= (1.0 / lumped[i]) * acc;
    }
    apply_strong_bc(stages[m], bc);
    check_finite(stages[m], iteration, m);
  }
}

}  // namespace

ThetaTable theta_coefficients(int M) {
  if (M < 1 || M > kMaxSubintervals)
    throw std::invalid_argument("dec: subinterval count must be in [1," +
                                std::to_string(kMaxSubintervals) + "]");
  ThetaTable table;
  table.subintervals = M;
  table.beta.resize(M);
  table.theta.assign(M, std::vector<double>(M + 1, 0.0));

  // Integrate each Lagrange polynomial exactly over [0, m/M].
  const QuadratureRule rule = gauss_legendre_rule(M + 1);
  for (int m = 1; m <= M; ++m) {
    const double upper = static_cast<double>(m) / M;
    table.beta[m - 1] = upper;
    std::vector<double> pts(rule.points.size());
    for (std::size_t q = 0; q < pts.size(); ++q) pts[q] = upper * rule.points[q];
    const auto values = lagrange_on_equispaced(M, pts);
    for (int l = 0; l <= M; ++l) {
      double s = 0.0;
      for (std::size_t q = 0; q < pts.size(); ++q) s += rule.weights[q] * values[q][l];
      table.theta[m - 1][l] = upper * s;
    }
  }
  return table;
}

std::string to_string(DecVariant variant) {
  return variant == DecVariant::FixedNodes ? "bdec" : "bdecu";
}

void BoundaryCondition::validate() const {
  for (const auto& h : {left_H, right_H})
    if (h && *h <= 0.0)
      throw std::invalid_argument("boundary: prescribed water height must be positive");
}

void apply_strong_bc(SolutionField& state, const BoundaryCondition& bc) {
  if (bc.left_H) state.front()[0] = *bc.left_H;
  if (bc.left_q) state.front()[1] = *bc.left_q;
  if (bc.right_H) state.back()[0] = *bc.right_H;
  if (bc.right_q) state.back()[1] = *bc.right_q;
}

MassOperator::MassOperator(Mesh1D mesh, Basis basis)
    : mesh_(std::move(mesh)), basis_(std::move(basis)), lumped_(mesh_.dof_count(), 0.0) {
  for (int e = 0; e < mesh_.element_count(); ++e) {
    const double dx = mesh_.element_length(e);
    for (int k = 0; k < mesh_.local_count(); ++k)
      lumped_[mesh_.dof(e, k)] += dx * basis_.lumped_ref(k);
  }
  for (double c : lumped_)
    if (!(c > 0.0)) throw std::invalid_argument("dec: nonpositive lumped mass");
}

void MassOperator::apply_difference(const SolutionField& a, const SolutionField& b,
                                    SolutionField& out) const {
  out.assign(a.size(), Vec2{});
  const int n = mesh_.local_count();
  for (int e = 0; e < mesh_.element_count(); ++e) {
    const double dx = mesh_.element_length(e);
    for (int i = 0; i < n; ++i) {
      Vec2 acc;
      for (int j = 0; j < n; ++j) {
        const int gj = mesh_.dof(e, j);
        const double m = basis_.mass_ref(i, j);
        acc[0] += m * (a[gj][0] - b[gj][0]);
        acc[1] += m * (a[gj][1] - b[gj][1]);
      }
      out[mesh_.dof(e, i)] += dx * acc;
    }
  }
}

SolutionField bdec_step(const SolutionField& state_n, double dt, const ResidualFn& residual,
                        const DecConfig& config, const MassOperator& mass,
                        const BoundaryCondition& bc) {
  const int M = config.subintervals;
  const int P = config.iterations > 0 ? config.iterations : M + 1;
  const ThetaTable& table = cached_theta(M);

  std::vector<SolutionField> stages(M + 1, state_n);
  std::vector<SolutionField> residuals(M + 1);
  residual(state_n, residuals[0]);
  SolutionField mass_diff;

  for (int p = 1; p <= P; ++p) {
    for (int l = 1; l <= M; ++l) residual(stages[l], residuals[l]);
    correction_sweep(stages, residuals, table, dt, mass, bc, mass_diff, p);
  }
  return stages[M];
}

SolutionField bdecu_step(const SolutionField& state_n, double dt, const ResidualFn& residual,
                         const DecConfig& config, const MassOperator& mass,
                         const BoundaryCondition& bc) {
  const int M = config.subintervals;
  const int P = config.iterations > 0 ? config.iterations : M + 1;

  int cur = 1;  // current subinterval count
  std::vector<SolutionField> stages(2, state_n);
  std::vector<SolutionField> residuals(M + 1);
  residual(state_n, residuals[0]);
  SolutionField mass_diff;

  for (int p = 1; p <= P; ++p) {
    if (p >= 2 && p <= P - 1 && cur < M) {
      // Interpolate the stage vector in time onto one more subtimenode.
      const int next = cur + 1;
      std::vector<double> new_nodes(next + 1);
      for (int m = 0; m <= next; ++m) new_nodes[m] = static_cast<double>(m) / next;
      const auto w = lagrange_on_equispaced(cur, new_nodes);
      std::vector<SolutionField> grown(next + 1, SolutionField(state_n.size()));
      grown[0] = state_n;
      for (int m = 1; m <= next; ++m)
        for (std::size_t i = 0; i < state_n.size(); ++i) {
          Vec2 acc;
          for (int l = 0; l <= cur; ++l) acc += w[m][l] * stages[l][i];
          grown[m][i] = acc;
        }
      stages = std::move(grown);
      cur = next;
    }
    const ThetaTable& table = cached_theta(cur);
    for (int l = 1; l <= cur; ++l) residual(stages[l], residuals[l]);
    correction_sweep(stages, residuals, table, dt, mass, bc, mass_diff, p);
  }
  return stages[cur];
}

SolutionField dec_step(const SolutionField& state_n, double dt, const ResidualFn& residual,
                       const DecConfig& config, const MassOperator& mass,
                       const BoundaryCondition& bc) {
  return config.variant == DecVariant::FixedNodes
             ? bdec_step(state_n, dt, residual, config, mass, bc)
             : bdecu_step(state_n, dt, residual, config, mass, bc);
}

double compute_dt(double cfl, const Mesh1D& mesh, const Basis& basis, const SolutionField& state,
                  const PhysParams& params) {
  if (!(cfl > 0.0)) throw std::invalid_argument("dec: CFL must be positive");
  double dt = std::numeric_limits<double>::infinity();
  std::array<Vec2, kMaxLocal> u{};
  for (int e = 0; e < mesh.element_count(); ++e) {
    element_nodal_values(mesh, basis, state, e, u);
    double speed = 0.0;
    for (int k = 0; k < mesh.local_count(); ++k)
      speed = std::max(speed, swe::spectral_radius(u[k], params));
    if (!std::isfinite(speed)) throw std::domain_error("dec: non-finite wave speed");
    dt = std::min(dt, mesh.element_length(e) / speed);
  }
  return cfl * dt;
}

}  // namespace swcip
