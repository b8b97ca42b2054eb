#pragma once

// Two-mode Gaussian states described by their covariance matrix
//
//   V = [[A, C], [C^T, B]]
//
// in (x1, p1, x2, p2) ordering with vacuum V = I.

#include "eofb/symplectic.hpp"

namespace eofb {

/// Locally reduced parameters: A = a I, B = b I, C = diag(c1, c2), c1 >= |c2|.
struct StandardForm {
  double a = 1.0;
  double b = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Local symplectic invariants det A, det B, det C and Tr(AJCJBJC^TJ).
struct Invariants {
  double i1 = 1.0;
  double i2 = 1.0;
  double i3 = 0.0;
  double i4 = 0.0;
};

class CovMat {
 public:
  CovMat() : m_(SymMat4::identity()) {}
  explicit CovMat(const SymMat4& m) : m_(m) {}

  static CovMat from_blocks(const Mat2& a, const Mat2& b, const Mat2& c);
  static CovMat from_standard_form(const StandardForm& sf);
  /// a = b = m with correlation diag(c1, c2).
  static CovMat symmetric(double m, double c1, double c2) {
    return from_standard_form({m, m, c1, c2});
  }
  /// Pure two-mode squeezed vacuum with squeezing r.
  static CovMat two_mode_squeezed(double r);

  const SymMat4& matrix() const { return m_; }
  Mat2 a_block() const { return m_.top_left(); }
  Mat2 b_block() const { return m_.bottom_right(); }
  Mat2 c_block() const { return m_.top_right(); }

  /// True when max |A_ij - B_ij| <= tol.
  bool is_symmetric(double tol = 1e-9) const;

 private:
  SymMat4 m_;
};

/// Local symplectic S_A (+) S_B, each block with unit determinant.
struct LocalSymplectic {
  Mat2 mode_a = Mat2::Identity();
  Mat2 mode_b = Mat2::Identity();

  Mat4 full() const;
  Mat4 inverse_full() const;
};

Invariants invariants(const CovMat& v);

/// Standard form from the invariants: a = sqrt(I1), b = sqrt(I2), and (c1, c2)
/// solving c1 c2 = I3, c1^2 + c2^2 = I4 / (ab), with sign(c2) = sign(I3).
/// Throws DegenerateInvariants when I4/(ab) < 2|I3| by more than tol (relative)
/// or when I1, I2 are not positive.
StandardForm standard_form(const Invariants& inv, double tol = 1e-10);
StandardForm standard_form(const CovMat& v, double tol = 1e-10);

/// Explicit local symplectic taking v to its standard form: S v S^T has blocks
/// aI, bI, diag(c1, c2). Requires A and B positive definite.
LocalSymplectic standard_form_transform(const CovMat& v);

/// Closed-form symplectic eigenvalues from the invariants. Throws
/// NonPositiveMatrix when v is not positive definite.
SympSpectrum symplectic_eigenvalues(const CovMat& v, double tol = kDefaultPsdTol);
SympSpectrum symplectic_eigenvalues(const Invariants& inv);

/// Same, for the partially transposed matrix (I3 -> -I3).
SympSpectrum ppt_eigenvalues(const CovMat& v, double tol = kDefaultPsdTol);
SympSpectrum ppt_eigenvalues(const Invariants& inv);

/// Positive definite and mu_minus >= 1 - tol.
bool is_physical(const CovMat& v, double tol = kDefaultPsdTol);

/// PPT test mu~_minus < 1 - tol. Throws NonPhysicalState for unphysical v.
bool is_entangled(const CovMat& v, double tol = kDefaultPsdTol);

enum class Side { a_side, b_side, midpoint };

/// Symmetric state with both local blocks replaced by A, B or (A + B)/2 and the
/// correlation block C kept.
CovMat reduced_symmetric(const CovMat& v, Side which);

/// Exchanges the roles of the two modes: blocks (B, A, C^T).
CovMat swap_modes(const CovMat& v);

}  // namespace eofb
