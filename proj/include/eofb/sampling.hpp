#pragma once

// Random generators for property tests and the acceptance suite.

#include <random>

#include "eofb/gaussian_state.hpp"

namespace eofb {

using Rng = std::mt19937_64;

/// a, b uniform in [1, a_max]; c1 uniform in [0, sqrt(ab)), c2 uniform in
/// [-c1, c1]; rejected until mu_minus >= 1.
StandardForm sample_physical_standard_form(Rng& rng, double a_max = 4.0);

/// Same with a = b.
StandardForm sample_symmetric_standard_form(Rng& rng, double a_max = 4.0);

/// R(t1) Sq(s) R(t2) with s in [-s_max, s_max].
Mat2 random_local_symplectic(Rng& rng, double s_max = 0.8);

/// G^T G with G entries normal(0, scale).
SymMat4 random_psd(Rng& rng, double scale = 0.3);

/// random_psd + shift * I.
SymMat4 random_positive_definite(Rng& rng, double scale = 0.7, double shift = 0.05);

}  // namespace eofb
