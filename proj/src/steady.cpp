#include "swcip/steady.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swcip {

namespace {

double critical_height(double q_bar, double g) { return std::cbrt(q_bar * q_bar / g); }

}  // namespace

std::string to_string(FlowRegime regime) {
  switch (regime) {
    case FlowRegime::LakeAtRest:
      return "lake";
    case FlowRegime::Supercritical:
      return "super";
    case FlowRegime::Subcritical:
      return "sub";
    case FlowRegime::Transcritical:
      return "trans";
  }
  return "?";
}

SteadyReference SteadyReference::lake_at_rest(double eta_bar, const Bathymetry& bathy,
                                              const PhysParams& params) {
  if (!(eta_bar > bathy.max_value()))
    throw std::invalid_argument("steady: lake level must exceed the bathymetry maximum");
  SteadyReference s;
  s.regime_ = FlowRegime::LakeAtRest;
  s.eta_bar_ = eta_bar;
  s.energy_ = params.g * eta_bar;
  s.bathy_ = bathy;
  s.params_ = params;
  return s;
}

SteadyReference SteadyReference::supercritical(double q_bar, double h_left,
                                               const Bathymetry& bathy, const PhysParams& params,
                                               double x_left) {
  if (!(h_left > 0.0) || q_bar == 0.0)
    throw std::invalid_argument("steady: supercritical flow needs H > 0 and q != 0");
  SteadyReference s;
  s.regime_ = FlowRegime::Supercritical;
  s.q_bar_ = q_bar;
  s.bathy_ = bathy;
  s.params_ = params;
  s.energy_ =
      0.5 * q_bar * q_bar / (h_left * h_left) + params.g * (h_left + bathy.value(x_left));
  if (h_left >= critical_height(q_bar, params.g))
    throw std::invalid_argument("steady: inflow height is not on the supercritical branch");
  return s;
}

SteadyReference SteadyReference::subcritical(double q_bar, double h_right,
                                             const Bathymetry& bathy, const PhysParams& params,
                                             double x_right) {
  if (!(h_right > 0.0) || q_bar == 0.0)
    throw std::invalid_argument("steady: subcritical flow needs H > 0 and q != 0");
  SteadyReference s;
  s.regime_ = FlowRegime::Subcritical;
  s.q_bar_ = q_bar;
  s.bathy_ = bathy;
  s.params_ = params;
  s.energy_ =
      0.5 * q_bar * q_bar / (h_right * h_right) + params.g * (h_right + bathy.value(x_right));
  if (h_right <= critical_height(q_bar, params.g))
    throw std::invalid_argument("steady: outflow height is not on the subcritical branch");
  return s;
}

SteadyReference SteadyReference::transcritical(double q_bar, const Bathymetry& bathy,
                                               const PhysParams& params) {
  if (q_bar == 0.0) throw std::invalid_argument("steady: transcritical flow needs q != 0");
  SteadyReference s;
  s.regime_ = FlowRegime::Transcritical;
  s.q_bar_ = q_bar;
  s.bathy_ = bathy;
  s.params_ = params;
  // Criticality exactly at the crest fixes the energy.
  const double hc = critical_height(q_bar, params.g);
  s.energy_ = 1.5 * params.g * hc + params.g * bathy.max_value();
  return s;
}

double SteadyReference::solve_height(double x, bool subcritical_branch) const {
  const double g = params_.g;
  const double b = bathy_.value(x);
  const double hc = critical_height(q_bar_, g);
  const double e_min = 1.5 * g * hc + g * b;
  const double scale = std::max(1.0, energy_);
  if (energy_ < e_min - 1e-9 * scale)
    throw std::runtime_error("steady: no admissible height at x = " + std::to_string(x) +
                             " (energy below critical)");
  if (energy_ <= e_min + 1e-13 * scale) return hc;

  const double a2 = g * b - energy_;
  const auto f = [&](double h) { return g * h * h * h + a2 * h * h + 0.5 * q_bar_ * q_bar_; };
  const auto df = [&](double h) { return 3.0 * g * h * h + 2.0 * a2 * h; };

  double lo, hi;  // f(lo) and f(hi) have opposite signs, f(hc) <= 0
  if (subcritical_branch) {
    lo = hc;
    hi = energy_ / g + hc;
  } else {
    lo = 1e-12 * hc;
    hi = hc;
  }
  double flo = f(lo);
  double h = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fh = f(h);
    if (fh == 0.0) break;
    if ((fh > 0.0) == (flo > 0.0)) {
      lo = h;
      flo = fh;
    } else {
      hi = h;
    }
    const double d = df(h);
    double next = (d != 0.0) ? h - fh / d : 0.5 * (lo + hi);
    if (!(next > std::min(lo, hi) && next < std::max(lo, hi))) next = 0.5 * (lo + hi);
    if (std::abs(next - h) < 1e-16 * std::max(1.0, h)) {
      h = next;
      break;
    }
    h = next;
  }
  return h;
}

Vec2 SteadyReference::sample(double x) const {
  switch (regime_) {
    case FlowRegime::LakeAtRest: {
      const double h = eta_bar_ - bathy_.value(x);
      return {h, 0.0};
    }
    case FlowRegime::Supercritical:
      if (!traj_x_.empty()) break;
      return {solve_height(x, false), q_bar_};
    case FlowRegime::Subcritical:
      if (!traj_x_.empty()) break;
      return {solve_height(x, true), q_bar_};
    case FlowRegime::Transcritical: {
      const double crest = bathy_.crest();
      if (x == crest) return {critical_height(q_bar_, params_.g), q_bar_};
      return {solve_height(x, x < crest), q_bar_};
    }
  }
  // Friction: cubic Hermite interpolation of the integrated trajectory,
  // with the one-sided derivatives of the interval containing x.
  const auto& xs = traj_x_;
  if (x <= xs.front()) return {traj_h_.front(), q_bar_};
  if (x >= xs.back()) return {traj_h_.back(), q_bar_};
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double dx = xs[i] - xs[i - 1];
  const double t = (x - xs[i - 1]) / dx;
  const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  const double h10 = t * (1.0 - t) * (1.0 - t);
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  const double h = h00 * traj_h_[i - 1] + h10 * dx * traj_dh_right_[i - 1] +
                   h01 * traj_h_[i] + h11 * dx * traj_dh_left_[i];
  return {h, q_bar_};
}

std::function<Vec2(double)> SteadyReference::sampler() const {
  return [copy = *this](double x) { return copy.sample(x); };
}

SteadyReference SteadyReference::friction_ode(FlowRegime regime, double q_bar, double h_datum,
                                              double manning, const Bathymetry& bathy,
                                              const PhysParams& params, double x_left,
                                              double x_right, int substeps) {
  if (regime != FlowRegime::Supercritical && regime != FlowRegime::Subcritical)
    throw std::invalid_argument("steady: friction references support super/subcritical only");
  if (!(manning >= 0.0)) throw std::invalid_argument("steady: Manning coefficient must be >= 0");

  SteadyReference s;
  s.regime_ = regime;
  s.q_bar_ = q_bar;
  s.manning_ = manning;
  s.bathy_ = bathy;
  s.params_ = params;
  s.energy_ = std::numeric_limits<double>::quiet_NaN();

  const double g = params.g;
  const double fric = g * manning * manning * std::abs(q_bar) * q_bar;
  // hint selects the analytic bathymetry piece, so stage evaluations at the
  // kink points pick the directional limit of the segment being integrated.
  const auto rhs = [&](double x, double h, double hint) {
    const double denom = g - q_bar * q_bar / (h * h * h);
    if (std::abs(denom) < 1e-10 * g)
      throw std::runtime_error("steady: friction profile crosses the sonic point at x = " +
                               std::to_string(x));
    return (-g * bathy.slope(x, hint) - fric * std::pow(h, -10.0 / 3.0)) / denom;
  };

  // Split at the bathymetry kinks so every integrated piece is smooth, then
  // distribute the substeps by length.
  std::vector<double> cuts = {x_left};
  for (double b : bathy.breakpoints())
    if (b > x_left && b < x_right) cuts.push_back(b);
  cuts.push_back(x_right);

  std::vector<double> xs = {cuts.front()};
  std::vector<double> hint_of_interval;  // one entry per interval
  const double total = x_right - x_left;
  for (std::size_t c = 1; c < cuts.size(); ++c) {
    const double len = cuts[c] - cuts[c - 1];
    const double hint = 0.5 * (cuts[c - 1] + cuts[c]);
    const int m = std::max(16, static_cast<int>(std::ceil(substeps * len / total)));
    for (int k = 1; k <= m; ++k) {
      xs.push_back(cuts[c - 1] + len * k / m);
      hint_of_interval.push_back(hint);
    }
  }

  const bool downstream = regime == FlowRegime::Supercritical;  // integrate left -> right
  const std::size_t n = xs.size();
  std::vector<double> hs(n);
  hs[downstream ? 0 : n - 1] = h_datum;
  for (std::size_t step = 1; step < n; ++step) {
    const std::size_t i_prev = downstream ? step - 1 : n - step;
    const std::size_t i_next = downstream ? step : n - 1 - step;
    const double hint = hint_of_interval[std::min(i_prev, i_next)];
    const double x0 = xs[i_prev];
    const double dx = xs[i_next] - xs[i_prev];
    const double h0 = hs[i_prev];
    const double k1 = rhs(x0, h0, hint);
    const double k2 = rhs(x0 + 0.5 * dx, h0 + 0.5 * dx * k1, hint);
    const double k3 = rhs(x0 + 0.5 * dx, h0 + 0.5 * dx * k2, hint);
    const double k4 = rhs(x0 + dx, h0 + dx * k3, hint);
    hs[i_next] = h0 + dx / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(hs[i_next] > 0.0))
      throw std::runtime_error("steady: friction profile dries out at x = " +
                               std::to_string(xs[i_next]));
  }

  s.traj_x_ = std::move(xs);
  s.traj_h_ = std::move(hs);
  // One-sided derivatives per interval end for the Hermite sampler.
  s.traj_dh_left_.resize(n, 0.0);
  s.traj_dh_right_.resize(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double hint = hint_of_interval[i];
    s.traj_dh_right_[i] = rhs(s.traj_x_[i], s.traj_h_[i], hint);
    s.traj_dh_left_[i + 1] = rhs(s.traj_x_[i + 1], s.traj_h_[i + 1], hint);
  }
  return s;
}

BoundaryCondition SteadyReference::boundary_condition(double x_left, double x_right) const {
  BoundaryCondition bc;
  switch (regime_) {
    case FlowRegime::LakeAtRest:
      bc.left_H = eta_bar_ - bathy_.value(x_left);
      bc.left_q = 0.0;
      bc.right_H = eta_bar_ - bathy_.value(x_right);
      bc.right_q = 0.0;
      break;
    case FlowRegime::Supercritical:
      bc.left_H = sample(x_left)[0];
      bc.left_q = q_bar_;
      break;
    case FlowRegime::Subcritical:
      bc.left_q = q_bar_;
      bc.right_H = sample(x_right)[0];
      break;
    case FlowRegime::Transcritical:
      bc.left_q = q_bar_;
      break;
  }
  bc.validate();
  return bc;
}

ErrorNorms l1_error(const SolutionField& state, const std::function<Vec2(double)>& reference,
                    const Mesh1D& mesh, const Basis& basis) {
  const QuadratureRule rule = gauss_legendre_rule(10);
  const int n = mesh.local_count();
  // Basis values at the error-quadrature points.
  std::vector<std::array<double, kMaxLocal>> phi(rule.points.size());
  for (std::size_t q = 0; q < rule.points.size(); ++q)
    basis.eval(0, rule.points[q], std::span(phi[q].data(), n));

  ErrorNorms norms;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double dx = mesh.element_length(e);
    const double a = mesh.element_bounds[e];
    double sum_h = 0.0, sum_q = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      Vec2 u;
      for (int k = 0; k < n; ++k) {
        const Vec2& c = state[mesh.dof(e, k)];
        u[0] += c[0] * phi[q][k];
        u[1] += c[1] * phi[q][k];
      }
      const Vec2 ref = reference(a + dx * rule.points[q]);
      const double dh = std::abs(u[0] - ref[0]);
      const double dq = std::abs(u[1] - ref[1]);
      sum_h += rule.weights[q] * dh;
      sum_q += rule.weights[q] * dq;
      norms.linf_H = std::max(norms.linf_H, dh);
      norms.linf_q = std::max(norms.linf_q, dq);
    }
    norms.l1_H += dx * sum_h;
    norms.l1_q += dx * sum_q;
  }
  return norms;
}

ErrorNorms l1_error(const SolutionField& state, const SteadyReference& reference,
                    const Mesh1D& mesh, const Basis& basis) {
  return l1_error(state, reference.sampler(), mesh, basis);
}

}  // namespace swcip
