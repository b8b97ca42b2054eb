#include "eofb/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eofb/error.hpp"

namespace eofb {

namespace {

Mat2 sym_sqrt_inverse(const Mat2& m) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (m + m.transpose()));
  if (!(es.eigenvalues()(0) > 0.0)) {
    throw Error(ErrorCode::NonPositiveMatrix, "local block is not positive definite");
  }
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

// Roots of mu^2 = s +- sqrt(d), with d and the smaller root clamped at zero.
SympSpectrum spectrum_from(double s, double d) {
  const double root = std::sqrt(std::max(d, 0.0));
  SympSpectrum out;
  out.mu_minus = std::sqrt(std::max(s - root, 0.0));
  out.mu_plus = std::sqrt(std::max(s + root, 0.0));
  return out;
}

void require_positive_definite(const CovMat& v, double tol) {
  const double lmin = min_eigenvalue(v.matrix());
  if (!(lmin > tol)) {
    std::ostringstream msg;
    msg << "covariance matrix is not positive definite (min eigenvalue " << lmin << ")";
    throw Error(ErrorCode::NonPositiveMatrix, msg.str());
  }
}

}  // namespace

CovMat CovMat::from_blocks(const Mat2& a, const Mat2& b, const Mat2& c) {
  Mat4 m;
  m << a, c, c.transpose(), b;
  return CovMat(SymMat4(m));
}

CovMat CovMat::from_standard_form(const StandardForm& sf) {
  Mat2 c = Mat2::Zero();
  c(0, 0) = sf.c1;
  c(1, 1) = sf.c2;
  return from_blocks(sf.a * Mat2::Identity(), sf.b * Mat2::Identity(), c);
}

CovMat CovMat::two_mode_squeezed(double r) {
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return from_standard_form({ch, ch, sh, -sh});
}

bool CovMat::is_symmetric(double tol) const {
  return (a_block() - b_block()).cwiseAbs().maxCoeff() <= tol;
}

Mat4 LocalSymplectic::full() const {
  Mat4 s = Mat4::Zero();
  s.topLeftCorner<2, 2>() = mode_a;
  s.bottomRightCorner<2, 2>() = mode_b;
  return s;
}

Mat4 LocalSymplectic::inverse_full() const {
  // For 2x2 S with det S = 1, S^{-1} = -J S^T J.
  const Mat2& j = single_mode_form();
  Mat4 s = Mat4::Zero();
  s.topLeftCorner<2, 2>() = -j * mode_a.transpose() * j;
  s.bottomRightCorner<2, 2>() = -j * mode_b.transpose() * j;
  return s;
}

Invariants invariants(const CovMat& v) {
  const Mat2 a = v.a_block();
  const Mat2 b = v.b_block();
  const Mat2 c = v.c_block();
  const Mat2& j = single_mode_form();
  Invariants inv;
  inv.i1 = a.determinant();
  inv.i2 = b.determinant();
  inv.i3 = c.determinant();
  inv.i4 = (a * j * c * j * b * j * c.transpose() * j).trace();
  return inv;
}

StandardForm standard_form(const Invariants& inv, double tol) {
  if (!(inv.i1 > 0.0) || !(inv.i2 > 0.0)) {
    throw Error(ErrorCode::DegenerateInvariants, "I1 and I2 must be positive");
  }
  StandardForm sf;
  sf.a = std::sqrt(inv.i1);
  sf.b = std::sqrt(inv.i2);
  const double p = inv.i4 / (sf.a * sf.b);
  const double gap = p - 2.0 * std::abs(inv.i3);
  if (gap < -tol * std::max(1.0, std::abs(p))) {
    std::ostringstream msg;
    msg << "no real correlation block: I4/(ab) = " << p << " < 2|I3| = "
        << 2.0 * std::abs(inv.i3);
    throw Error(ErrorCode::DegenerateInvariants, msg.str());
  }
  // (c1 + c2)^2 = p + 2 I3 and (c1 - c2)^2 = p - 2 I3.
  const double sum = std::sqrt(std::max(p + 2.0 * inv.i3, 0.0));
  const double diff = std::sqrt(std::max(p - 2.0 * inv.i3, 0.0));
  sf.c1 = 0.5 * (sum + diff);
  sf.c2 = inv.i3 == 0.0 ? 0.0 : 0.5 * (sum - diff);
  return sf;
}

StandardForm standard_form(const CovMat& v, double tol) {
  return standard_form(invariants(v), tol);
}

LocalSymplectic standard_form_transform(const CovMat& v) {
  const Mat2 a = v.a_block();
  const Mat2 b = v.b_block();
  const double sa = std::sqrt(std::sqrt(a.determinant()));
  const double sb = std::sqrt(std::sqrt(b.determinant()));
  // sqrt(a) A^{-1/2} has unit determinant and maps A to a I.
  const Mat2 ta = sa * sym_sqrt_inverse(a);
  const Mat2 tb = sb * sym_sqrt_inverse(b);
  const Mat2 c = ta * v.c_block() * tb.transpose();

  Eigen::JacobiSVD<Mat2> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat2 u = svd.matrixU();
  Mat2 w = svd.matrixV();
  if (u.determinant() < 0.0) u.col(1) *= -1.0;
  if (w.determinant() < 0.0) w.col(1) *= -1.0;

  LocalSymplectic s;
  s.mode_a = u.transpose() * ta;
  s.mode_b = w.transpose() * tb;
  return s;
}

SympSpectrum symplectic_eigenvalues(const Invariants& inv) {
  const double half_sum = 0.5 * (inv.i1 + inv.i2);
  const double half_diff = 0.5 * (inv.i1 - inv.i2);
  return spectrum_from(half_sum + inv.i3,
                       half_diff * half_diff + (inv.i1 + inv.i2) * inv.i3 + inv.i4);
}

SympSpectrum ppt_eigenvalues(const Invariants& inv) {
  Invariants flipped = inv;
  flipped.i3 = -inv.i3;
  return symplectic_eigenvalues(flipped);
}

SympSpectrum symplectic_eigenvalues(const CovMat& v, double tol) {
  require_positive_definite(v, tol);
  return symplectic_eigenvalues(invariants(v));
}

SympSpectrum ppt_eigenvalues(const CovMat& v, double tol) {
  require_positive_definite(v, tol);
  return ppt_eigenvalues(invariants(v));
}

bool is_physical(const CovMat& v, double tol) {
  if (!(min_eigenvalue(v.matrix()) > 0.0)) return false;
  return symplectic_eigenvalues(invariants(v)).mu_minus >= 1.0 - tol;
}

bool is_entangled(const CovMat& v, double tol) {
  if (!is_physical(v, tol)) {
    throw Error(ErrorCode::NonPhysicalState, "PPT test needs a physical state");
  }
  return ppt_eigenvalues(invariants(v)).mu_minus < 1.0 - tol;
}

CovMat reduced_symmetric(const CovMat& v, Side which) {
  Mat2 m;
  switch (which) {
    case Side::a_side: m = v.a_block(); break;
    case Side::b_side: m = v.b_block(); break;
    case Side::midpoint: m = 0.5 * (v.a_block() + v.b_block()); break;
  }
  return CovMat::from_blocks(m, m, v.c_block());
}

CovMat swap_modes(const CovMat& v) {
  return CovMat::from_blocks(v.b_block(), v.a_block(), v.c_block().transpose());
}

}  // namespace eofb
