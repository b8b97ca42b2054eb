#include <doctest.h>

#include "eofb/error.hpp"
#include "eofb/symplectic.hpp"
#include "test_util.hpp"

using namespace eofb;
using eofb::test::near;

TEST_CASE("is_psd") {
  CHECK(is_psd(SymMat4::identity(), 1e-10));

  Mat4 d = Mat4::Identity();
  d(3, 3) = -0.1;
  CHECK_FALSE(is_psd(SymMat4(d), 1e-10));

  Rng rng(1);
  for (int k = 0; k < 200; ++k) CHECK(is_psd(random_psd(rng), 1e-10));
}

TEST_CASE("SymMat4 symmetrizes its input") {
  Mat4 m = Mat4::Zero();
  m(0, 1) = 2.0;
  const SymMat4 s(m);
  CHECK(s(0, 1) == 1.0);
  CHECK(s(1, 0) == 1.0);
}

TEST_CASE("loewner_ge examples") {
  CHECK(loewner_ge(2.0 * SymMat4::identity(), SymMat4::identity(), 1e-10));

  Rng rng(2);
  const SymMat4 m = random_psd(rng);
  CHECK(loewner_ge(m, m, 0.0));

  const SymMat4 x(Eigen::Vector4d(2, 1, 1, 1).asDiagonal().toDenseMatrix());
  const SymMat4 y(Eigen::Vector4d(1, 2, 1, 1).asDiagonal().toDenseMatrix());
  CHECK_FALSE(loewner_ge(x, y, 1e-10));
  CHECK_FALSE(loewner_ge(y, x, 1e-10));
}

TEST_CASE("loewner_ge behaves as a partial order on samples") {
  Rng rng(3);
  const double tol = 1e-10;
  for (int k = 0; k < 300; ++k) {
    const SymMat4 a = random_positive_definite(rng);
    const SymMat4 b = a + random_psd(rng);
    const SymMat4 c = b + random_psd(rng);
    CHECK(loewner_ge(a, a, tol));
    CHECK(loewner_ge(c, a, tol));  // transitivity through b
    if (loewner_ge(a, b, tol) && loewner_ge(b, a, tol)) {
      CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("symplectic form") {
  const Mat4& j = symplectic_form();
  CHECK((j * j + Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((j.transpose() + j).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial_transpose") {
  CHECK(partial_transpose(SymMat4::identity()).matrix() == Mat4::Identity());

  const CovMat sf = CovMat::from_standard_form({1.3, 1.7, 0.6, -0.4});
  const CovMat flipped = CovMat::from_standard_form({1.3, 1.7, 0.6, 0.4});
  CHECK(partial_transpose(sf.matrix()).matrix() == flipped.matrix().matrix());

  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const SymMat4 m = random_positive_definite(rng);
    const SymMat4 t = partial_transpose(m);
    CHECK(t.matrix() == t.matrix().transpose());
    CHECK(partial_transpose(t).matrix() == m.matrix());
  }
}

TEST_CASE("symplectic_spectrum examples") {
  SympSpectrum s = symplectic_spectrum(SymMat4::identity());
  CHECK(near(s.mu_minus, 1.0, 1e-14));
  CHECK(near(s.mu_plus, 1.0, 1e-14));

  s = symplectic_spectrum(2.0 * SymMat4::identity());
  CHECK(near(s.mu_minus, 2.0, 1e-14));
  CHECK(near(s.mu_plus, 2.0, 1e-14));

  // Pure two-mode squeezed state: sqrt(m^2 - c1^2) = 1.
  for (double r : {0.1, 0.5, 1.2}) {
    s = symplectic_spectrum(CovMat::two_mode_squeezed(r).matrix());
    CHECK(near(s.mu_minus, 1.0, 1e-10));
    CHECK(near(s.mu_plus, 1.0, 1e-10));
  }
}

TEST_CASE("symplectic_spectrum rejects non positive definite input") {
  Mat4 d = Mat4::Identity();
  d(2, 2) = -1.0;
  CHECK_THROWS_AS(symplectic_spectrum(SymMat4(d)), Error);
  try {
    symplectic_spectrum(SymMat4(d));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveMatrix);
  }
}

TEST_CASE("symplectic_spectrum matches the invariant formula") {
  Rng rng(5);
  for (int k = 0; k < 500; ++k) {
    const CovMat v = test::random_physical_state(rng);
    const SympSpectrum general = symplectic_spectrum(v.matrix());
    const SympSpectrum closed = symplectic_eigenvalues(invariants(v));
    CHECK(near(general.mu_minus, closed.mu_minus, 1e-10));
    CHECK(near(general.mu_plus, closed.mu_plus, 1e-10));
  }
}

TEST_CASE("Williamson ordering: H1 >= H2 implies ordered spectra") {
  Rng rng(6);
  for (int k = 0; k < 1000; ++k) {
    const SymMat4 h2 = random_positive_definite(rng);
    const SymMat4 h1 = h2 + random_psd(rng);
    const SympSpectrum s1 = symplectic_spectrum(h1);
    const SympSpectrum s2 = symplectic_spectrum(h2);
    CHECK(s1.mu_minus >= s2.mu_minus - 1e-9);
    CHECK(s1.mu_plus >= s2.mu_plus - 1e-9);
  }
}
