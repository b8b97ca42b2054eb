#pragma once

// Upper and lower bounds on the entanglement of formation of a two-mode
// Gaussian state obtained from symmetric states related to it by classical
// noise channels.
//
// If V = V0 + D with D >= 0, the state with covariance V is obtained from the
// one with V0 by adding Gaussian classical noise, so EoF(V) <= EoF(V0). With
// B >= A (Loewner) and the same correlation block C,
//
//   V_BB = V_AB + (B - A) (+) 0      and      V_AB = V_AA + 0 (+) (B - A),
//
// which sandwiches EoF(V_AB) between the closed-form symmetric values
// EoF(V_BB) <= EoF(sigma) <= EoF(V_AB) <= EoF(V_AA), sigma having both local
// blocks equal to (A + B)/2.

#include <optional>
#include <string>
#include <vector>

#include "eofb/entanglement.hpp"
#include "eofb/geof.hpp"

namespace eofb {

struct NoiseMatrix {
  SymMat4 delta;
};

/// Returns v - target; throws NotPSD if that has an eigenvalue below -tol,
/// in which case no bound follows.
NoiseMatrix noise_decomposition(const CovMat& v, const CovMat& target,
                                double tol = kDefaultPsdTol);

/// How the local blocks are compared. automatic tries the raw blocks first and
/// falls back to the standard form, where A = aI and B = bI always compare.
enum class Frame { automatic, raw, standard };

struct BoundOptions {
  double psd_tol = kDefaultPsdTol;
  double bound_tol = 1e-9;
  Frame frame = Frame::automatic;
  int search_steps = 64;
  bool compute_geof = true;
  GeofOptions geof;
};

/// The state actually used to build the bounds: possibly reduced to standard
/// form and with the modes swapped so that B >= A.
struct Orientation {
  CovMat state;
  Frame frame = Frame::raw;  // raw or standard
  bool swapped = false;
};

/// Throws IncomparableBlocks when frame == raw and neither A >= B nor B >= A.
Orientation orient(const CovMat& v, const BoundOptions& opts = {});

struct PhysicalityFlags {
  bool state = false;
  bool rho_bb = false;  // larger local block, lower bound
  bool sigma = false;
  bool rho_aa = false;  // smaller local block, upper bound
};

struct BoundReport {
  EntanglementValue lower_natural;
  EntanglementValue lower_sigma;
  std::optional<EntanglementValue> upper_natural;
  std::optional<EntanglementValue> upper_searched;
  EntanglementValue eeof;
  std::optional<EntanglementValue> geof;
  std::optional<GeofResult> geof_detail;
  bool entangled = false;
  PhysicalityFlags flags;
  Frame frame = Frame::raw;
  bool swapped = false;
  /// Empty when every available bound respects the ordering.
  std::vector<std::string> hierarchy_violations;

  bool hierarchy_ok() const { return hierarchy_violations.empty(); }
};

/// Fills lower_natural, upper_natural (absent when V_AA is unphysical),
/// flags, frame and swapped. Throws NonPhysicalState for unphysical v.
BoundReport natural_bounds(const CovMat& v, const BoundOptions& opts = {});

/// EoF of the symmetric state with local blocks (A + B)/2.
EntanglementValue sigma_lower_bound(const CovMat& v, const BoundOptions& opts = {});

/// Minimizes the symmetric EoF over V' = m I (+) m I with correlation t C on a
/// (steps + 1) x steps grid, t in (0, 1], m in [1, m_max], keeping v - V' >= 0
/// and V' physical. Refining steps by an integer factor only adds grid points.
std::optional<EntanglementValue> searched_upper_bound(const CovMat& v, int steps,
                                                      const BoundOptions& opts = {});

/// When B - A <= A, the symmetric state with local blocks B - A lies below V in
/// the Loewner order, so its EoF bounds EoF(V) from above if it is physical.
std::optional<EntanglementValue> difference_upper_bound(const CovMat& v,
                                                        const BoundOptions& opts = {});

/// Assembles every bound plus eeof and, optionally, GeoF, and records any
/// break of lower_natural <= lower_sigma <= geof <= upper bounds.
BoundReport bound_report(const CovMat& v, const BoundOptions& opts = {});

}  // namespace eofb
