#pragma once

#include <cmath>
#include <string>

#include "eofb/gaussian_state.hpp"
#include "eofb/sampling.hpp"

namespace eofb::test {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Conjugates v by a random local symplectic S_A (+) S_B.
inline CovMat locally_scrambled(const CovMat& v, Rng& rng, double s_max = 0.8) {
  LocalSymplectic s;
  s.mode_a = random_local_symplectic(rng, s_max);
  s.mode_b = random_local_symplectic(rng, s_max);
  return CovMat(v.matrix().congruence(s.full()));
}

inline CovMat random_physical_state(Rng& rng, double a_max = 4.0) {
  return CovMat::from_standard_form(sample_physical_standard_form(rng, a_max));
}

}  // namespace eofb::test
