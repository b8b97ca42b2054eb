#include "eofb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eofb/error.hpp"

namespace eofb {

namespace {

void require_physical(const CovMat& v, double tol) {
  if (!is_physical(v, tol)) {
    std::ostringstream msg;
    msg << "state is not physical";
    try {
      msg << " (mu_minus = " << symplectic_eigenvalues(v).mu_minus << ")";
    } catch (const Error&) {
      msg << " (not positive definite)";
    }
    throw Error(ErrorCode::NonPhysicalState, msg.str());
  }
}

double min_block_eigenvalue(const Mat2& m) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

std::optional<EntanglementValue> symmetric_value(const CovMat& s, double tol) {
  if (!is_physical(s, tol)) return std::nullopt;
  return eof_symmetric(s, 1e-9, tol);
}

// The midpoint state is always built from the standard form.
CovMat sigma_state(const CovMat& v, const BoundOptions& opts) {
  BoundOptions std_opts = opts;
  std_opts.frame = Frame::standard;
  return reduced_symmetric(orient(v, std_opts).state, Side::midpoint);
}

void check_le(const char* lhs_name, double lhs, const char* rhs_name, double rhs, double tol,
              std::vector<std::string>& out) {
  if (lhs > rhs + tol) {
    std::ostringstream msg;
    msg.precision(12);
    msg << lhs_name << " = " << lhs << " exceeds " << rhs_name << " = " << rhs;
    out.push_back(msg.str());
  }
}

}  // namespace

NoiseMatrix noise_decomposition(const CovMat& v, const CovMat& target, double tol) {
  const SymMat4 delta = v.matrix() - target.matrix();
  const double lmin = min_eigenvalue(delta);
  if (lmin < -tol) {
    std::ostringstream msg;
    msg << "noise matrix is not positive semidefinite (min eigenvalue " << lmin << ")";
    throw Error(ErrorCode::NotPSD, msg.str());
  }
  return {delta};
}

Orientation orient(const CovMat& v, const BoundOptions& opts) {
  if (opts.frame != Frame::standard) {
    const Mat2 a = v.a_block();
    const Mat2 b = v.b_block();
    if (loewner_ge(b, a, opts.psd_tol)) return {v, Frame::raw, false};
    if (loewner_ge(a, b, opts.psd_tol)) return {swap_modes(v), Frame::raw, true};
    if (opts.frame == Frame::raw) {
      throw Error(ErrorCode::IncomparableBlocks,
                  "local blocks are not ordered in the Loewner sense");
    }
  }
  StandardForm sf = standard_form(v);
  const bool swapped = sf.a > sf.b;
  if (swapped) std::swap(sf.a, sf.b);
  return {CovMat::from_standard_form(sf), Frame::standard, swapped};
}

BoundReport natural_bounds(const CovMat& v, const BoundOptions& opts) {
  require_physical(v, opts.psd_tol);
  const Orientation o = orient(v, opts);

  BoundReport r;
  r.frame = o.frame;
  r.swapped = o.swapped;
  r.flags.state = true;

  const auto lower = symmetric_value(reduced_symmetric(o.state, Side::b_side), opts.psd_tol);
  r.flags.rho_bb = lower.has_value();
  // V_BB = V_AB + noise is physical whenever V_AB is; the fallback only
  // guards against rounding at the physicality edge.
  r.lower_natural = lower.value_or(EntanglementValue{0.0});

  r.upper_natural = symmetric_value(reduced_symmetric(o.state, Side::a_side), opts.psd_tol);
  r.flags.rho_aa = r.upper_natural.has_value();
  return r;
}

EntanglementValue sigma_lower_bound(const CovMat& v, const BoundOptions& opts) {
  require_physical(v, opts.psd_tol);
  const CovMat sigma = sigma_state(v, opts);
  return symmetric_value(sigma, opts.psd_tol).value_or(EntanglementValue{0.0});
}

std::optional<EntanglementValue> searched_upper_bound(const CovMat& v, int steps,
                                                      const BoundOptions& opts) {
  require_physical(v, opts.psd_tol);
  if (steps < 1) return std::nullopt;
  const Orientation o = orient(v, opts);
  const Mat2 c = o.state.c_block();
  const double m_max =
      std::min(min_block_eigenvalue(o.state.a_block()), min_block_eigenvalue(o.state.b_block()));
  if (m_max < 1.0) return std::nullopt;

  std::optional<EntanglementValue> best;
  for (int i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    for (int j = 0; j <= steps; ++j) {
      const double m = 1.0 + (m_max - 1.0) * static_cast<double>(j) / steps;
      const CovMat trial =
          CovMat::from_blocks(m * Mat2::Identity(), m * Mat2::Identity(), t * c);
      if (!loewner_ge(o.state.matrix(), trial.matrix(), opts.psd_tol)) continue;
      const auto value = symmetric_value(trial, opts.psd_tol);
      if (value && (!best || value->nats < best->nats)) best = value;
    }
  }
  return best;
}

std::optional<EntanglementValue> difference_upper_bound(const CovMat& v,
                                                        const BoundOptions& opts) {
  require_physical(v, opts.psd_tol);
  const Orientation o = orient(v, opts);
  const Mat2 a = o.state.a_block();
  const Mat2 m = o.state.b_block() - a;
  if (!loewner_ge(a, m, opts.psd_tol)) return std::nullopt;
  const CovMat candidate = CovMat::from_blocks(m, m, o.state.c_block());
  if (!loewner_ge(o.state.matrix(), candidate.matrix(), opts.psd_tol)) return std::nullopt;
  return symmetric_value(candidate, opts.psd_tol);
}

BoundReport bound_report(const CovMat& v, const BoundOptions& opts) {
  BoundReport r = natural_bounds(v, opts);
  const CovMat sigma = sigma_state(v, opts);
  const auto sigma_value = symmetric_value(sigma, opts.psd_tol);
  r.flags.sigma = sigma_value.has_value();
  r.lower_sigma = sigma_value.value_or(EntanglementValue{0.0});
  r.upper_searched = searched_upper_bound(v, opts.search_steps, opts);
  r.eeof = eeof(v, opts.psd_tol);
  r.entangled = is_entangled(v, opts.psd_tol);
  if (opts.compute_geof) {
    GeofResult g = geof(v, opts.geof);
    r.geof = g.value;
    r.geof_detail = std::move(g);
  }

  auto& bad = r.hierarchy_violations;
  const double bt = opts.bound_tol;
  const double gt = opts.geof.tol;
  check_le("lower_natural", r.lower_natural.nats, "lower_sigma", r.lower_sigma.nats, bt, bad);
  if (r.upper_natural) {
    check_le("lower_sigma", r.lower_sigma.nats, "upper_natural", r.upper_natural->nats, bt, bad);
  }
  if (r.upper_searched) {
    check_le("lower_sigma", r.lower_sigma.nats, "upper_searched", r.upper_searched->nats, bt,
             bad);
  }
  if (r.geof) {
    check_le("lower_sigma", r.lower_sigma.nats, "geof", r.geof->nats, gt, bad);
    if (r.upper_natural) {
      check_le("geof", r.geof->nats, "upper_natural", r.upper_natural->nats, gt, bad);
    }
    if (r.upper_searched) {
      check_le("geof", r.geof->nats, "upper_searched", r.upper_searched->nats, gt, bad);
    }
  }
  return r;
}

}  // namespace eofb
