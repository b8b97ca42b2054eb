#include "eofb/symplectic.hpp"

#include <algorithm>
#include <complex>
#include <sstream>

#include "eofb/error.hpp"

namespace eofb {

SymMat4 SymMat4::block_diagonal(const Mat2& top, const Mat2& bottom) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<2, 2>() = top;
  m.bottomRightCorner<2, 2>() = bottom;
  return SymMat4(m);
}

const Mat2& single_mode_form() {
  static const Mat2 j = (Mat2() << 0.0, 1.0, -1.0, 0.0).finished();
  return j;
}

const Mat4& symplectic_form() {
  static const Mat4 j = [] {
    Mat4 m = Mat4::Zero();
    m.topLeftCorner<2, 2>() = single_mode_form();
    m.bottomRightCorner<2, 2>() = single_mode_form();
    return m;
  }();
  return j;
}

double min_eigenvalue(const SymMat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(m.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const SymMat4& m, double tol) { return min_eigenvalue(m) >= -tol; }

bool loewner_ge(const SymMat4& m1, const SymMat4& m2, double tol) {
  return is_psd(m1 - m2, tol);
}

bool loewner_ge(const Mat2& m1, const Mat2& m2, double tol) {
  const Mat2 d = 0.5 * ((m1 - m2) + (m1 - m2).transpose());
  Eigen::SelfAdjointEigenSolver<Mat2> es(d, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -tol;
}

SymMat4 partial_transpose(const SymMat4& m) {
  // Conjugation by diag(1, 1, 1, -1) only flips signs; done entrywise so the
  // involution is exact.
  Mat4 out = m.matrix();
  for (int k = 0; k < 3; ++k) {
    out(k, 3) = -out(k, 3);
    out(3, k) = -out(3, k);
  }
  return SymMat4(out);
}

SympSpectrum symplectic_spectrum(const SymMat4& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(m.matrix());
  const Eigen::Vector4d lambda = es.eigenvalues();
  if (!(lambda(0) > tol)) {
    std::ostringstream msg;
    msg << "matrix is not positive definite (min eigenvalue " << lambda(0) << ")";
    throw Error(ErrorCode::NonPositiveMatrix, msg.str());
  }
  const Mat4 root = es.eigenvectors() * lambda.cwiseSqrt().asDiagonal() *
                    es.eigenvectors().transpose();
  // i * root * J * root is Hermitian with eigenvalues {-mu+, -mu-, mu-, mu+}.
  const Mat4 k = root * symplectic_form() * root;
  const Eigen::Matrix4cd h = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> hs(h, Eigen::EigenvaluesOnly);
  const Eigen::Vector4d w = hs.eigenvalues();
  // Pair +mu with -mu to cancel rounding asymmetry.
  SympSpectrum s;
  s.mu_minus = 0.5 * (w(2) - w(1));
  s.mu_plus = 0.5 * (w(3) - w(0));
  if (s.mu_minus > s.mu_plus) std::swap(s.mu_minus, s.mu_plus);
  return s;
}

}  // namespace eofb
