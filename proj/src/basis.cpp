#include "swcip/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swcip/linalg.hpp"

namespace swcip {

namespace {

// Small monomial-coefficient polynomial helpers; degrees never exceed
// kMaxDegree + 1, so fixed arrays suffice.

double poly_eval(std::span<const double> coef, double x) {
  double r = 0.0;
  for (int j = static_cast<int>(coef.size()) - 1; j >= 0; --j) r = r * x + coef[j];
  return r;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Bernstein row of degree M at xi (exact zeros/ones at the endpoints).
void bernstein_row(int M, double xi, double* out) {
  const double om = 1.0 - xi;
  for (int i = 0; i <= M; ++i)
    out[i] = binomial(M, i) * std::pow(xi, i) * std::pow(om, M - i);
}

// Cardinal Lagrange values and derivatives in product form; avoids the
// cancellation of an expanded monomial representation.
void lagrange_row(int r, std::span<const double> nodes, double xi, double* out) {
  const int n = static_cast<int>(nodes.size());
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    if (r == 0) {
      acc = 1.0;
      for (int k = 0; k < n; ++k)
        if (k != j) acc *= (xi - nodes[k]) / (nodes[j] - nodes[k]);
    } else if (r == 1) {
      for (int m = 0; m < n; ++m) {
        if (m == j) continue;
        double p = 1.0 / (nodes[j] - nodes[m]);
        for (int k = 0; k < n; ++k)
          if (k != j && k != m) p *= (xi - nodes[k]) / (nodes[j] - nodes[k]);
        acc += p;
      }
    } else {
      for (int m = 0; m < n; ++m) {
        if (m == j) continue;
        for (int l = 0; l < n; ++l) {
          if (l == j || l == m) continue;
          double p = 1.0 / ((nodes[j] - nodes[m]) * (nodes[j] - nodes[l]));
          for (int k = 0; k < n; ++k)
            if (k != j && k != m && k != l) p *= (xi - nodes[k]) / (nodes[j] - nodes[k]);
          acc += p;
        }
      }
    }
    out[j] = acc;
  }
}

std::vector<double> gauss_lobatto_nodes(int degree) {
  switch (degree) {
    case 1:
      return {0.0, 1.0};
    case 2:
      return {0.0, 0.5, 1.0};
    case 3: {
      const double a = 1.0 / std::sqrt(5.0);
      return {0.0, 0.5 * (1.0 - a), 0.5 * (1.0 + a), 1.0};
    }
    case 4: {
      const double a = std::sqrt(3.0 / 7.0);
      return {0.0, 0.5 * (1.0 - a), 0.5, 0.5 * (1.0 + a), 1.0};
    }
    default:
      throw std::invalid_argument("basis: Gauss-Lobatto nodes only tabulated for degrees 1..4");
  }
}

long double legendre(int n, long double x, long double* dp) {
  long double p0 = 1.0L, p1 = x;
  if (n == 0) {
    *dp = 0.0L;
    return p0;
  }
  for (int k = 2; k <= n; ++k) {
    const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  *dp = n * (x * p1 - p0) / (x * x - 1.0L);
  return p1;
}

}  // namespace

std::string to_string(BasisFamily family) {
  switch (family) {
    case BasisFamily::Bernstein:
      return "bernstein";
    case BasisFamily::LagrangeEquispaced:
      return "lagrange";
    case BasisFamily::LagrangeGaussLobatto:
      return "lagrange-gauss-lobatto";
  }
  return "?";
}

void BasisSpec::validate() const {
  if (degree < 1 || degree > kMaxDegree)
    throw std::invalid_argument("basis: degree must be in [1," + std::to_string(kMaxDegree) + "]");
  if (family == BasisFamily::LagrangeEquispaced && degree == 4)
    throw std::invalid_argument("basis: equispaced Lagrange degree 4 is unstable and unsupported");
}

double QuadratureRule::integrate(std::span<const double> values) const {
  double s = 0.0;
  for (std::size_t q = 0; q < weights.size(); ++q) s += weights[q] * values[q];
  return s;
}

QuadratureRule gauss_legendre_rule(int n) {
  if (n < 1 || n > 32) throw std::invalid_argument("quadrature: Gauss-Legendre size must be in [1,32]");
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  rule.exactness_degree = 2 * n - 1;
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(pi * (4.0L * i + 3.0L) / (4.0L * n + 2.0L));
    for (int it = 0; it < 100; ++it) {
      long double dp = 0.0L;
      const long double p = legendre(n, x, &dp);
      const long double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    long double dp = 0.0L;
    legendre(n, x, &dp);
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    // map [-1,1] -> [0,1]
    rule.points[n - 1 - i] = static_cast<double>(0.5L * (1.0L + x));
    rule.points[i] = static_cast<double>(0.5L * (1.0L - x));
    rule.weights[i] = rule.weights[n - 1 - i] = static_cast<double>(0.5L * w);
  }
  validate_rule(rule);
  return rule;
}

QuadratureRule gauss_lobatto_rule(int n) {
  if (n < 2 || n > 5) throw std::invalid_argument("quadrature: Gauss-Lobatto size must be in [2,5]");
  QuadratureRule rule;
  rule.points = gauss_lobatto_nodes(n - 1);
  switch (n) {
    case 2:
      rule.weights = {0.5, 0.5};
      break;
    case 3:
      rule.weights = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
      break;
    case 4:
      rule.weights = {1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0};
      break;
    case 5:
      rule.weights = {1.0 / 20.0, 49.0 / 180.0, 16.0 / 45.0, 49.0 / 180.0, 1.0 / 20.0};
      break;
  }
  rule.exactness_degree = 2 * n - 3;
  validate_rule(rule);
  return rule;
}

void validate_rule(const QuadratureRule& rule) {
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  if (std::abs(wsum - 1.0) > 1e-14) throw std::runtime_error("quadrature: weights do not sum to 1");
  for (int k = 0; k <= rule.exactness_degree; ++k) {
    double s = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q)
      s += rule.weights[q] * std::pow(rule.points[q], k);
    if (std::abs(s - 1.0 / (k + 1.0)) > 1e-13)
      throw std::runtime_error("quadrature: declared exactness not met at degree " + std::to_string(k));
  }
}

Basis::Basis(BasisSpec spec) : spec_(spec) {
  spec_.validate();
  const int M = spec_.degree;
  const int n = M + 1;

  if (spec_.family == BasisFamily::LagrangeGaussLobatto) {
    nodes_ = gauss_lobatto_nodes(M);
    rule_ = gauss_lobatto_rule(n);
  } else {
    nodes_.resize(n);
    for (int k = 0; k < n; ++k) nodes_[k] = static_cast<double>(k) / M;
    rule_ = gauss_legendre_rule(n);
  }

  // Monomial coefficients, used for the antiderivative tables only
  // (pointwise evaluation goes through the stable per-family formulas).
  if (spec_.family == BasisFamily::Bernstein) {
    for (int i = 0; i < n; ++i) {
      const double c = binomial(M, i);
      for (int k = 0; k <= M - i; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        coef_[0][i][i + k] += c * binomial(M - i, k) * sign;
      }
    }
  } else {
    // Cardinal polynomials by direct product expansion.
    for (int i = 0; i < n; ++i) {
      std::array<double, kMaxLocal> p{};
      p[0] = 1.0;
      int deg = 0;
      double denom = 1.0;
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        denom *= nodes_[i] - nodes_[k];
        // multiply p by (x - node_k)
        for (int j = deg + 1; j >= 1; --j) p[j] = p[j - 1] - nodes_[k] * p[j];
        p[0] = -nodes_[k] * p[0];
        ++deg;
      }
      for (int j = 0; j <= M; ++j) coef_[0][i][j] = p[j] / denom;
    }
  }

  // Antiderivatives (vanishing at 0).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= M; ++j) acoef_[i][j + 1] = coef_[0][i][j] / (j + 1);

  for (std::size_t q = 0; q < rule_.points.size(); ++q) {
    eval_raw(0, rule_.points[q], phi_q_[q].data());
    eval_raw(1, rule_.points[q], dphi_q_[q].data());
  }

  for (int i = 0; i < n; ++i) {
    lumped_ref_[i] = 0.0;
    for (std::size_t q = 0; q < rule_.points.size(); ++q) lumped_ref_[i] += rule_.weights[q] * phi_q_[q][i];
    if (lumped_ref_[i] <= 0.0)
      throw std::invalid_argument("basis: nonpositive lumped mass, explicit update ill-posed");
    for (int j = 0; j < n; ++j) {
      double m = 0.0, k = 0.0;
      for (std::size_t q = 0; q < rule_.points.size(); ++q) {
        m += rule_.weights[q] * phi_q_[q][i] * phi_q_[q][j];
        k += rule_.weights[q] * phi_q_[q][i] * dphi_q_[q][j];
      }
      mass_ref_[i][j] = m;
      conv_ref_[i][j] = k;
    }
  }

  for (int r = 0; r <= 2; ++r) {
    eval_raw(r, 0.0, bval_[r][0].data());
    eval_raw(r, 1.0, bval_[r][1].data());
  }

  std::array<double, kMaxLocal> row{};
  for (int k = 0; k < n; ++k) {
    eval_raw(1, nodes_[k], row.data());
    for (int i = 0; i < n; ++i) {
      antider_node_[k][i] = poly_eval(std::span(acoef_[i].data(), n + 1), nodes_[k]);
      dphi_node_[k][i] = row[i];
    }
  }

  cardinal_ = spec_.family != BasisFamily::Bernstein;
  for (int k = 0; k < n; ++k) {
    eval_raw(0, nodes_[k], row.data());
    for (int j = 0; j < n; ++j)
      colloc_[k][j] = cardinal_ ? (k == j ? 1.0 : 0.0) : row[j];
  }
  if (cardinal_) {
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) colloc_inv_[k][j] = (k == j) ? 1.0 : 0.0;
  } else {
    // Invert the collocation matrix column by column.
    for (int col = 0; col < n; ++col) {
      std::vector<double> A(n * n);
      std::vector<double> rhs(n, 0.0);
      rhs[col] = 1.0;
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) A[k * n + j] = colloc_[k][j];
      solve_dense(n, A, rhs);
      for (int k = 0; k < n; ++k) colloc_inv_[k][col] = rhs[k];
    }
  }
}

void Basis::eval_raw(int r, double xi, double* out) const {
  const int M = spec_.degree;
  if (spec_.family != BasisFamily::Bernstein) {
    lagrange_row(r, nodes_, xi, out);
    return;
  }
  if (r == 0) {
    bernstein_row(M, xi, out);
    return;
  }
  std::array<double, kMaxLocal> lower{};
  if (r == 1) {
    bernstein_row(M - 1, xi, lower.data());
    for (int i = 0; i <= M; ++i) {
      const double left = (i >= 1) ? lower[i - 1] : 0.0;
      const double right = (i <= M - 1) ? lower[i] : 0.0;
      out[i] = M * (left - right);
    }
    return;
  }
  if (M < 2) {
    for (int i = 0; i <= M; ++i) out[i] = 0.0;
    return;
  }
  bernstein_row(M - 2, xi, lower.data());
  const double factor = static_cast<double>(M) * (M - 1);
  for (int i = 0; i <= M; ++i) {
    const double a = (i >= 2 && i - 2 <= M - 2) ? lower[i - 2] : 0.0;
    const double b = (i >= 1 && i - 1 <= M - 2) ? lower[i - 1] : 0.0;
    const double c = (i <= M - 2) ? lower[i] : 0.0;
    out[i] = factor * (a - 2.0 * b + c);
  }
}

void Basis::eval(int r, double xi, std::span<double> out) const {
  if (r < 0 || r > 2) throw std::invalid_argument("basis: derivative order must be in {0,1,2}");
  if (xi < 0.0 || xi > 1.0) throw std::invalid_argument("basis: local coordinate must be in [0,1]");
  eval_raw(r, xi, out.data());
}

std::vector<double> Basis::eval(int r, double xi) const {
  std::vector<double> out(count());
  eval(r, xi, out);
  return out;
}

double Basis::antiderivative(int i, double xi) const {
  return poly_eval(std::span(acoef_[i].data(), count() + 1), xi);
}

std::vector<double> Basis::lumped_mass(double h) const {
  if (h <= 0.0) throw std::invalid_argument("basis: element length must be positive");
  std::vector<double> out(count());
  for (int i = 0; i < count(); ++i) out[i] = h * lumped_ref_[i];
  return out;
}

std::vector<double> Basis::local_mass_matrix(double h) const {
  if (h <= 0.0) throw std::invalid_argument("basis: element length must be positive");
  const int n = count();
  std::vector<double> out(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i * n + j] = h * mass_ref_[i][j];
  return out;
}

void Basis::interpolation_coefficients(std::span<const double> nodal_values,
                                       std::span<double> out) const {
  const int n = count();
  if (cardinal_) {
    std::copy(nodal_values.begin(), nodal_values.begin() + n, out.begin());
    return;
  }
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += colloc_inv_[i][k] * nodal_values[k];
    out[i] = s;
  }
  // Endpoint basis functions are cardinal for every supported family, so the
  // endpoint coefficients equal the endpoint samples exactly. Forcing them
  // keeps the global interpolant bit-identical across shared face nodes.
  out[0] = nodal_values[0];
  out[n - 1] = nodal_values[n - 1];
}

std::vector<double> Basis::interpolation_coefficients(std::span<const double> nodal_values) const {
  std::vector<double> out(count());
  interpolation_coefficients(nodal_values, out);
  return out;
}

void Basis::nodal_values(std::span<const double> coefficients, std::span<double> out) const {
  const int n = count();
  if (cardinal_) {
    std::copy(coefficients.begin(), coefficients.begin() + n, out.begin());
    return;
  }
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += colloc_[k][j] * coefficients[j];
    out[k] = s;
  }
}

}  // namespace swcip
