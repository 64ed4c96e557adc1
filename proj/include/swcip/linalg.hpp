#ifndef SWCIP_LINALG_HPP
#define SWCIP_LINALG_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace swcip {

/// Two-component value, used for conserved states (H, q) and any other
/// per-DoF pair (flux, source, entropy variables, ...).
struct Vec2 {
  double v[2]{0.0, 0.0};

  Vec2() = default;
  Vec2(double a, double b) : v{a, b} {}

  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }

  Vec2& operator+=(const Vec2& o) {
    v[0] += o.v[0];
    v[1] += o.v[1];
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    v[0] -= o.v[0];
    v[1] -= o.v[1];
    return *this;
  }
  Vec2& operator*=(double s) {
    v[0] *= s;
    v[1] *= s;
    return *this;
  }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(double s, Vec2 a) { return a *= s; }
inline Vec2 operator*(Vec2 a, double s) { return a *= s; }

/// 2x2 matrix in row-major order.
struct Mat2 {
  double m[2][2]{{0.0, 0.0}, {0.0, 0.0}};

  Mat2() = default;
  Mat2(double a00, double a01, double a10, double a11) : m{{a00, a01}, {a10, a11}} {}

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }
};

inline Vec2 operator*(const Mat2& A, const Vec2& x) {
  return {A(0, 0) * x[0] + A(0, 1) * x[1], A(1, 0) * x[0] + A(1, 1) * x[1]};
}

inline Mat2 operator*(const Mat2& A, const Mat2& B) {
  Mat2 C;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) C(i, j) = A(i, 0) * B(0, j) + A(i, 1) * B(1, j);
  return C;
}

inline Mat2 operator*(double s, Mat2 A) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) A(i, j) *= s;
  return A;
}

inline Mat2 operator+(const Mat2& A, const Mat2& B) {
  Mat2 C;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) C(i, j) = A(i, j) + B(i, j);
  return C;
}

inline Mat2 inverse(const Mat2& A) {
  const double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  if (det == 0.0) throw std::runtime_error("linalg: singular 2x2 matrix");
  const double inv = 1.0 / det;
  return {A(1, 1) * inv, -A(0, 1) * inv, -A(1, 0) * inv, A(0, 0) * inv};
}

/// Solves the dense n-by-n system A x = b in place with partial pivoting.
/// A is row-major with leading dimension n. Used for the small local
/// collocation systems only.
inline void solve_dense(int n, std::vector<double>& A, std::vector<double>& b) {
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(A[k * n + k]);
    for (int i = k + 1; i < n; ++i) {
      const double a = std::abs(A[i * n + k]);
      if (a > best) {
        best = a;
        piv = i;
      }
    }
    if (best == 0.0) throw std::runtime_error("linalg: singular collocation system");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(A[k * n + j], A[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    const double diag = A[k * n + k];
    for (int i = k + 1; i < n; ++i) {
      const double f = A[i * n + k] / diag;
      if (f == 0.0) continue;
      A[i * n + k] = 0.0;
      for (int j = k + 1; j < n; ++j) A[i * n + j] -= f * A[k * n + j];
      b[i] -= f * b[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A[i * n + j] * b[j];
    b[i] = s / A[i * n + i];
  }
}

}  // namespace swcip

#endif
