#include "eofb/entanglement.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "eofb/error.hpp"

namespace eofb {

double EntanglementValue::bits() const { return nats / std::numbers::ln2; }

double formation_function(double x) {
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "formation function needs x > 0, got " << x;
    throw Error(ErrorCode::DomainError, msg.str());
  }
  if (x >= 1.0) return 0.0;
  // c- = (1 - x)^2 / (4x) and c+ = 1 + c-; written this way to avoid the
  // cancellation in the textbook form near x = 1.
  const double cm = (1.0 - x) * (1.0 - x) / (4.0 * x);
  if (cm == 0.0) return 0.0;
  return (1.0 + cm) * std::log1p(cm) - cm * std::log(cm);
}

EntanglementValue eof_symmetric(const CovMat& v, double sym_tol, double psd_tol) {
  if (!v.is_symmetric(sym_tol)) {
    throw Error(ErrorCode::NotSymmetric, "eof_symmetric needs A == B");
  }
  return eeof(v, psd_tol);
}

EntanglementValue eeof(const CovMat& v, double psd_tol) {
  if (!is_physical(v, psd_tol)) {
    throw Error(ErrorCode::NonPhysicalState, "entanglement of an unphysical state");
  }
  return {formation_function(ppt_eigenvalues(invariants(v)).mu_minus)};
}

}  // namespace eofb
