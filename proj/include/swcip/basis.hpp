#ifndef SWCIP_BASIS_HPP
#define SWCIP_BASIS_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

namespace swcip {

inline constexpr int kMaxDegree = 4;
inline constexpr int kMaxLocal = kMaxDegree + 1;

enum class BasisFamily { Bernstein, LagrangeEquispaced, LagrangeGaussLobatto };

std::string to_string(BasisFamily family);

/// Basis family plus polynomial degree. Local nodes live on the reference
/// element [0,1] and always include both endpoints, which is what makes the
/// assembled global space C0.
struct BasisSpec {
  BasisFamily family = BasisFamily::LagrangeGaussLobatto;
  int degree = 1;

  /// Throws std::invalid_argument for degrees outside [1,4] and for the
  /// equispaced Lagrange family at degree 4 (unstable, unsupported).
  void validate() const;
};

/// Quadrature rule on the unit interval [0,1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exactness_degree = 0;

  double integrate(std::span<const double> values) const;
};

/// n-point Gauss-Legendre rule on [0,1], exact for degree 2n-1.
QuadratureRule gauss_legendre_rule(int n);

/// n-point Gauss-Lobatto rule on [0,1] (2 <= n <= 5), exact for degree 2n-3.
/// Its points coincide with the Lagrange-Gauss-Lobatto basis nodes.
QuadratureRule gauss_lobatto_rule(int n);

/// Checks the weight sum and the declared monomial exactness; throws on
/// violation.
void validate_rule(const QuadratureRule& rule);

/// Immutable evaluation tables for one basis family/degree pair: node
/// layout, monomial coefficients of every basis function and its first two
/// derivatives, the element quadrature policy, reference mass/convection
/// integrals and the nodal collocation map.
///
/// All quantities are reference-element values; callers apply the 1/dx
/// chain-rule factors.
class Basis {
 public:
  explicit Basis(BasisSpec spec);

  const BasisSpec& spec() const { return spec_; }
  int degree() const { return spec_.degree; }
  int count() const { return spec_.degree + 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  const QuadratureRule& quadrature() const { return rule_; }

  /// d^r phi_i / dxi^r at xi, for r in {0,1,2} and xi in [0,1].
  void eval(int r, double xi, std::span<double> out) const;
  std::vector<double> eval(int r, double xi) const;

  /// Integral of phi_i from 0 to xi (used by the global-flux accumulation).
  double antiderivative(int i, double xi) const;

  /// C_i = h * integral of phi_i over [0,1]; all entries positive.
  std::vector<double> lumped_mass(double h) const;

  /// (i,j) entry is h * integral of phi_i phi_j, computed with the element
  /// quadrature policy (hence diagonal for Gauss-Lobatto Lagrange).
  std::vector<double> local_mass_matrix(double h) const;

  /// Coefficients c such that sum_j c_j phi_j matches the given values at
  /// the local nodes. Identity for the Lagrange families.
  std::vector<double> interpolation_coefficients(std::span<const double> nodal_values) const;
  void interpolation_coefficients(std::span<const double> nodal_values,
                                  std::span<double> out) const;

  /// Values sum_j c_j phi_j(node_k) at the local nodes (inverse of the map
  /// above; identity for the Lagrange families).
  void nodal_values(std::span<const double> coefficients, std::span<double> out) const;

  // Precomputed reference-element tables for the assemblers.
  double phi_at_quad(int q, int i) const { return phi_q_[q][i]; }
  double dphi_at_quad(int q, int i) const { return dphi_q_[q][i]; }
  /// mass_ref(i,j) = integral of phi_i phi_j (element policy quadrature).
  double mass_ref(int i, int j) const { return mass_ref_[i][j]; }
  /// conv_ref(i,j) = integral of phi_i dphi_j.
  double conv_ref(int i, int j) const { return conv_ref_[i][j]; }
  /// lumped_ref(i) = integral of phi_i.
  double lumped_ref(int i) const { return lumped_ref_[i]; }
  /// d^r phi_i at the element endpoint (side 0 -> xi=0, side 1 -> xi=1).
  double boundary_value(int r, int side, int i) const { return bval_[r][side][i]; }
  /// antiderivative of phi_i evaluated at local node k.
  double antiderivative_at_node(int k, int i) const { return antider_node_[k][i]; }
  /// dphi_i/dxi at local node k.
  double deriv_at_node(int k, int i) const { return dphi_node_[k][i]; }

 private:
  void eval_raw(int r, double xi, double* out) const;

  BasisSpec spec_;
  std::vector<double> nodes_;
  QuadratureRule rule_;
  // Monomial coefficients of phi_i (antiderivative construction only).
  std::array<std::array<std::array<double, kMaxLocal>, kMaxLocal>, 1> coef_{};
  // Antiderivative monomial coefficients (degree M+1, no constant term).
  std::array<std::array<double, kMaxLocal + 1>, kMaxLocal> acoef_{};
  std::array<std::array<double, kMaxLocal>, kMaxLocal> phi_q_{};
  std::array<std::array<double, kMaxLocal>, kMaxLocal> dphi_q_{};
  std::array<std::array<double, kMaxLocal>, kMaxLocal> mass_ref_{};
  std::array<std::array<double, kMaxLocal>, kMaxLocal> conv_ref_{};
  std::array<double, kMaxLocal> lumped_ref_{};
  std::array<std::array<std::array<double, kMaxLocal>, 2>, 3> bval_{};
  std::array<std::array<double, kMaxLocal>, kMaxLocal> antider_node_{};
  std::array<std::array<double, kMaxLocal>, kMaxLocal> dphi_node_{};
  bool cardinal_ = true;  // nodal values coincide with coefficients
  std::array<std::array<double, kMaxLocal>, kMaxLocal> colloc_{};      // phi_j(node_k)
  std::array<std::array<double, kMaxLocal>, kMaxLocal> colloc_inv_{};  // its inverse
};

}  // namespace swcip

#endif
