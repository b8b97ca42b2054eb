#pragma once

#include "eofb/gaussian_state.hpp"

namespace eofb {

enum class Units { nats, bits };

/// An entanglement value, stored in nats.
struct EntanglementValue {
  double nats = 0.0;

  double bits() const;
  double in(Units u) const { return u == Units::nats ? nats : bits(); }

  friend bool operator==(const EntanglementValue&, const EntanglementValue&) = default;
};

/// f(x) = c+ ln c+ - c- ln c-, c+-(x) = (x^{-1/2} +- x^{1/2})^2 / 4.
///
/// Decreasing on (0, 1) and clamped to 0 for x >= 1, so separable arguments give
/// zero. Throws DomainError for x <= 0 (or NaN).
double formation_function(double x);

/// EoF of a symmetric state, f of the smallest partially transposed symplectic
/// eigenvalue. Throws NotSymmetric if max|A - B| > sym_tol and NonPhysicalState
/// for unphysical input.
EntanglementValue eof_symmetric(const CovMat& v, double sym_tol = 1e-9,
                                double psd_tol = kDefaultPsdTol);

/// The same formula applied to a general (possibly asymmetric) state.
EntanglementValue eeof(const CovMat& v, double psd_tol = kDefaultPsdTol);

}  // namespace eofb
