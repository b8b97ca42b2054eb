#pragma once

// Fixed-size linear algebra for two-mode covariance matrices.
//
// Quadrature ordering is (x1, p1, x2, p2) throughout, and the vacuum
// covariance matrix is the identity.

#include <Eigen/Dense>

namespace eofb {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kDefaultPsdTol = 1e-10;

/// Real symmetric 4x4 matrix. Symmetry is enforced on construction by
/// replacing the input with (m + m^T) / 2.
class SymMat4 {
 public:
  SymMat4() : m_(Mat4::Zero()) {}
  explicit SymMat4(const Mat4& m) : m_(0.5 * (m + m.transpose())) {}

  static SymMat4 identity() { return SymMat4(Mat4::Identity()); }
  static SymMat4 zero() { return SymMat4(); }
  static SymMat4 block_diagonal(const Mat2& top, const Mat2& bottom);

  const Mat4& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  Mat2 top_left() const { return m_.topLeftCorner<2, 2>(); }
  Mat2 bottom_right() const { return m_.bottomRightCorner<2, 2>(); }
  Mat2 top_right() const { return m_.topRightCorner<2, 2>(); }

  friend SymMat4 operator+(const SymMat4& a, const SymMat4& b) { return SymMat4(a.m_ + b.m_); }
  friend SymMat4 operator-(const SymMat4& a, const SymMat4& b) { return SymMat4(a.m_ - b.m_); }
  friend SymMat4 operator*(double s, const SymMat4& a) { return SymMat4(s * a.m_); }

  /// Congruence s * this * s^T.
  SymMat4 congruence(const Mat4& s) const { return SymMat4(s * m_ * s.transpose()); }

 private:
  Mat4 m_;
};

/// Ordered symplectic eigenvalues, mu_minus <= mu_plus.
struct SympSpectrum {
  double mu_minus = 0.0;
  double mu_plus = 0.0;
};

/// J = [[0, 1], [-1, 0]] for one mode.
const Mat2& single_mode_form();
/// J_1 (+) J_1 for two modes.
const Mat4& symplectic_form();

double min_eigenvalue(const SymMat4& m);

bool is_psd(const SymMat4& m, double tol = kDefaultPsdTol);

/// Loewner order m1 >= m2, i.e. m1 - m2 is PSD within tol.
bool loewner_ge(const SymMat4& m1, const SymMat4& m2, double tol = kDefaultPsdTol);

/// Same comparison for 2x2 blocks.
bool loewner_ge(const Mat2& m1, const Mat2& m2, double tol = kDefaultPsdTol);

/// T_B m T_B^T with T_B = I_2 (+) sigma_z (sign flip of p2).
SymMat4 partial_transpose(const SymMat4& m);

/// Symplectic eigenvalues from the spectrum of i m^{1/2} J m^{1/2}, which is
/// similar to iJm and Hermitian. Throws NonPositiveMatrix unless the smallest
/// eigenvalue of m exceeds tol.
SympSpectrum symplectic_spectrum(const SymMat4& m, double tol = kDefaultPsdTol);

}  // namespace eofb
