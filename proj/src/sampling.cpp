#include "eofb/sampling.hpp"

#include <cmath>
#include <numbers>

namespace eofb {

StandardForm sample_physical_standard_form(Rng& rng, double a_max) {
  std::uniform_real_distribution<double> diag(1.0, a_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    StandardForm sf;
    sf.a = diag(rng);
    sf.b = diag(rng);
    sf.c1 = unit(rng) * std::sqrt(sf.a * sf.b);
    sf.c2 = (2.0 * unit(rng) - 1.0) * sf.c1;
    if (is_physical(CovMat::from_standard_form(sf), 0.0)) return sf;
  }
}

StandardForm sample_symmetric_standard_form(Rng& rng, double a_max) {
  std::uniform_real_distribution<double> diag(1.0, a_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    StandardForm sf;
    sf.a = sf.b = diag(rng);
    sf.c1 = unit(rng) * sf.a;
    sf.c2 = (2.0 * unit(rng) - 1.0) * sf.c1;
    if (is_physical(CovMat::from_standard_form(sf), 0.0)) return sf;
  }
}

Mat2 random_local_symplectic(Rng& rng, double s_max) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> sq(-s_max, s_max);
  auto rot = [](double t) {
    return (Mat2() << std::cos(t), -std::sin(t), std::sin(t), std::cos(t)).finished();
  };
  const double s = sq(rng);
  const Mat2 d = (Mat2() << std::exp(-s), 0.0, 0.0, std::exp(s)).finished();
  return rot(angle(rng)) * d * rot(angle(rng));
}

SymMat4 random_psd(Rng& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Mat4 g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) g(i, j) = n(rng);
  }
  return SymMat4(g.transpose() * g);
}

SymMat4 random_positive_definite(Rng& rng, double scale, double shift) {
  return random_psd(rng, scale) + shift * SymMat4::identity();
}

}  // namespace eofb
