#pragma once

// Gaussian entanglement of formation by direct minimization over pure
// two-mode Gaussian covariance matrices dominated by the input.
//
// Pure states are parametrized as Gamma = S S^T with
//
//   S = (R(angle_a) Sq(squeeze_a)) (+) (R(angle_b) Sq(squeeze_b)) * T(squeezing)
//
// where T is the two-mode squeezer and Sq(s) = diag(e^{-s}, e^{s}). The
// entanglement of Gamma is f(exp(-2|squeezing|)), so the search looks for the
// least squeezed pure state with Gamma <= V.

#include <cstdint>

#include "eofb/entanglement.hpp"

namespace eofb {

struct PureStateParams {
  double squeezing = 0.0;
  double angle_a = 0.0;
  double squeeze_a = 0.0;
  double angle_b = 0.0;
  double squeeze_b = 0.0;
};

SymMat4 pure_covariance(const PureStateParams& p);

struct GeofOptions {
  double tol = 1e-6;           // convergence target on the entanglement value
  long budget = 100000;        // objective evaluations
  double psd_tol = kDefaultPsdTol;
  std::uint64_t seed = 20110921;
  int grid = 16;               // coarse grid per axis for the x-p slice
  int starts = 4;              // best grid cells refined locally
  int random_starts = 2;       // extra seeded starts
  bool refine_rotations = true;
};

struct GeofResult {
  EntanglementValue value;
  /// Minimizer in the standard-form frame of the input.
  PureStateParams argmin;
  /// The minimizing pure covariance matrix mapped back to the input frame.
  SymMat4 pure_cm;
  bool feasible = false;
  /// False when the evaluation budget ran out before convergence (the best
  /// point found so far is still reported).
  bool converged = false;
  long iterations = 0;
};

/// Throws NonPhysicalState for unphysical input.
GeofResult geof(const CovMat& v, const GeofOptions& opts = {});

}  // namespace eofb
