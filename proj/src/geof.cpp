#include "eofb/geof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "eofb/error.hpp"
#include "eofb/nelder_mead.hpp"

namespace eofb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat2 rotation(double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return (Mat2() << c, -s, s, c).finished();
}

Mat2 squeezer(double s) {
  return (Mat2() << std::exp(-s), 0.0, 0.0, std::exp(s)).finished();
}

// For a standard-form V (no x-p correlations) and a pure state with x-block X
// and p-block X^{-1}, Gamma <= V reduces to W <= X <= Q with Q the x-block of V
// and W the inverse of its p-block. For fixed diagonal of X both 2x2 conditions
// are intervals for X12, so the slice is searched over (X11, X22) only.
class XpSlice {
 public:
  explicit XpSlice(const StandardForm& sf) {
    q_ << sf.a, sf.c1, sf.c1, sf.b;
    Mat2 p;
    p << sf.a, sf.c2, sf.c2, sf.b;
    w_ = p.inverse();
    w_(0, 1) = w_(1, 0) = 0.5 * (w_(0, 1) + w_(1, 0));
  }

  // Merit in [0, 1) is |correlation coefficient| of the best X with the given
  // diagonal; infeasible points score above 1, growing with the violation.
  double merit(const Eigen::Vector2d& u, Eigen::Vector3d* x_out = nullptr) const {
    double outside = 0.0;
    for (int k = 0; k < 2; ++k) {
      outside += std::max(0.0, -u(k)) + std::max(0.0, u(k) - 1.0);
    }
    if (outside > 0.0) return 2.0 + outside;

    const double x11 = w_(0, 0) + u(0) * (q_(0, 0) - w_(0, 0));
    const double x22 = w_(1, 1) + u(1) * (q_(1, 1) - w_(1, 1));
    const double r_upper = std::sqrt(std::max(0.0, (q_(0, 0) - x11) * (q_(1, 1) - x22)));
    const double r_lower = std::sqrt(std::max(0.0, (x11 - w_(0, 0)) * (x22 - w_(1, 1))));
    const double lo = std::max(q_(0, 1) - r_upper, w_(0, 1) - r_lower);
    const double hi = std::min(q_(0, 1) + r_upper, w_(0, 1) + r_lower);

    double x12;
    const double slack = 1e-13 * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (lo > hi + slack) {
      return 1.0 + (lo - hi);
    } else if (lo > hi) {
      x12 = 0.5 * (lo + hi);
    } else if (lo <= 0.0 && hi >= 0.0) {
      x12 = 0.0;
    } else {
      x12 = lo > 0.0 ? lo : hi;
    }
    if (x_out) *x_out = Eigen::Vector3d(x11, x22, x12);
    return std::abs(x12) / std::sqrt(x11 * x22);
  }

  bool degenerate() const {
    return q_(0, 0) - w_(0, 0) <= 0.0 && q_(1, 1) - w_(1, 1) <= 0.0;
  }

 private:
  Mat2 q_;
  Mat2 w_;
};

PureStateParams params_from_x_block(const Eigen::Vector3d& x) {
  const double rho = x(2) / std::sqrt(x(0) * x(1));
  const double cosh2r = 1.0 / std::sqrt(std::max(1.0 - rho * rho, 1e-300));
  PureStateParams p;
  p.squeezing = 0.5 * std::atanh(rho);
  p.squeeze_a = 0.5 * std::log(cosh2r / x(0));
  p.squeeze_b = 0.5 * std::log(cosh2r / x(1));
  return p;
}

double value_from_squeezing(double r) {
  return r == 0.0 ? 0.0 : formation_function(std::exp(-2.0 * std::abs(r)));
}

struct Budget {
  long used = 0;
  long total = 0;
  long remaining() const { return std::max(0L, total - used); }
};

struct SliceResult {
  double merit = kInf;
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  bool converged = false;
};

SliceResult search_xp_slice(const XpSlice& slice, const GeofOptions& opts, Budget& budget) {
  auto f = [&](const Eigen::VectorXd& u) { return slice.merit(Eigen::Vector2d(u(0), u(1))); };

  // Coarse grid over cell centres.
  const int g = std::max(2, opts.grid);
  std::vector<std::pair<double, Eigen::Vector2d>> cells;
  cells.reserve(static_cast<std::size_t>(g * g));
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const Eigen::Vector2d u((i + 0.5) / g, (j + 0.5) / g);
      cells.emplace_back(slice.merit(u), u);
    }
  }
  budget.used += static_cast<long>(cells.size());
  std::stable_sort(cells.begin(), cells.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });

  std::vector<Eigen::Vector2d> starts;
  for (int k = 0; k < std::min<int>(opts.starts, static_cast<int>(cells.size())); ++k) {
    starts.push_back(cells[static_cast<std::size_t>(k)].second);
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < opts.random_starts; ++k) {
    const double u0 = unit(rng);
    starts.emplace_back(u0, unit(rng));
  }

  SliceResult best;
  best.converged = true;
  const double h0 = 0.5 / g;
  for (const auto& s : starts) {
    Eigen::VectorXd x = s;
    double step = h0;
    double prev = kInf;
    bool settled = false;
    // Restart from the last minimizer until successive improvements stall.
    for (int round = 0; round < 8 && budget.remaining() > 0; ++round) {
      NelderMeadOptions nm;
      nm.max_evals = std::min(budget.remaining(), 4000L);
      const auto res = nelder_mead(f, x, Eigen::VectorXd::Constant(2, step), nm);
      budget.used += res.evals;
      x = res.x;
      const double improvement = prev - res.value;
      prev = res.value;
      if (res.converged && improvement <= 1e-3 * opts.tol) {
        settled = true;
        break;
      }
      step = std::max(1e-6, 0.25 * step);
    }
    const double m = slice.merit(Eigen::Vector2d(x(0), x(1)), nullptr);
    if (!settled) best.converged = false;
    if (m < best.merit) {
      Eigen::Vector3d xb;
      slice.merit(Eigen::Vector2d(x(0), x(1)), &xb);
      best.merit = m;
      best.x = xb;
    }
  }
  return best;
}

// Smallest |squeezing| with the sign of the hint such that Gamma <= V for the
// given local parameters, assuming the feasible squeezings near the hint form
// an interval. Returns +inf when nothing feasible is found near the hint.
double min_feasible_squeezing(const SymMat4& v, PureStateParams p, double hint,
                              Budget& budget) {
  const double sign = hint < 0.0 ? -1.0 : 1.0;
  auto feasible = [&](double t) {
    p.squeezing = sign * t;
    ++budget.used;
    return min_eigenvalue(v - pure_covariance(p)) >= 0.0;
  };
  const double t0 = std::abs(hint);
  double lo;
  double hi;
  if (feasible(t0)) {
    if (feasible(0.0)) return 0.0;
    lo = 0.0;
    hi = t0;
  } else {
    lo = t0;
    hi = kInf;
    for (int k = 0; k < 24; ++k) {
      const double t = t0 * (1.0 + 1e-7 * std::ldexp(1.0, k)) + 1e-9 * std::ldexp(1.0, k);
      if (feasible(t)) {
        hi = t;
        break;
      }
      lo = t;
    }
    if (hi == kInf) return kInf;
  }
  for (int it = 0; it < 64 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return sign * hi;
}

// Local search over the rotation angles and local squeezings of the full
// family, starting from the x-p slice optimum.
PureStateParams refine_rotations(const SymMat4& v, const PureStateParams& start,
                                 const GeofOptions& opts, Budget& budget) {
  PureStateParams best = start;
  double best_abs = std::abs(start.squeezing);
  double hint = start.squeezing;

  auto assemble = [&](const Eigen::VectorXd& y) {
    PureStateParams p;
    p.angle_a = y(0);
    p.squeeze_a = y(1);
    p.angle_b = y(2);
    p.squeeze_b = y(3);
    return p;
  };
  auto f = [&](const Eigen::VectorXd& y) {
    const double r = min_feasible_squeezing(v, assemble(y), hint, budget);
    return r == kInf ? 1e3 : std::abs(r);
  };

  Eigen::VectorXd y0(4);
  y0 << start.angle_a, start.squeeze_a, start.angle_b, start.squeeze_b;
  NelderMeadOptions nm;
  nm.x_tol = 1e-9;
  nm.f_tol = 1e-14;
  // Each merit call costs a few dozen eigen-solves; cap the outer iterations.
  nm.max_evals = std::min(400L, budget.remaining() / 64);
  if (nm.max_evals < 10) return best;
  const auto res = nelder_mead(f, y0, Eigen::VectorXd::Constant(4, 0.02), nm);

  if (res.value < best_abs - 1e-13) {
    PureStateParams cand = assemble(res.x);
    cand.squeezing = min_feasible_squeezing(v, cand, hint, budget);
    if (cand.squeezing != kInf && std::abs(cand.squeezing) < best_abs &&
        min_eigenvalue(v - pure_covariance(cand)) >= -opts.psd_tol) {
      best = cand;
    }
  }
  return best;
}

}  // namespace

SymMat4 pure_covariance(const PureStateParams& p) {
  const double ch = std::cosh(p.squeezing);
  const double sh = std::sinh(p.squeezing);
  const Mat2 sz = (Mat2() << 1.0, 0.0, 0.0, -1.0).finished();
  Mat4 t;
  t << ch * Mat2::Identity(), sh * sz, sh * sz, ch * Mat2::Identity();
  Mat4 local = Mat4::Zero();
  local.topLeftCorner<2, 2>() = rotation(p.angle_a) * squeezer(p.squeeze_a);
  local.bottomRightCorner<2, 2>() = rotation(p.angle_b) * squeezer(p.squeeze_b);
  const Mat4 s = local * t;
  return SymMat4(s * s.transpose());
}

GeofResult geof(const CovMat& v, const GeofOptions& opts) {
  if (!is_physical(v, opts.psd_tol)) {
    throw Error(ErrorCode::NonPhysicalState, "GeoF of an unphysical state");
  }
  const StandardForm sf = standard_form(v);
  const SymMat4 v_std = CovMat::from_standard_form(sf).matrix();

  Budget budget;
  budget.total = opts.budget;

  const XpSlice slice(sf);
  const SliceResult sr = search_xp_slice(slice, opts, budget);

  GeofResult out;
  if (sr.merit < 1.0) {
    out.argmin = params_from_x_block(sr.x);
    if (sr.merit > 0.0 && opts.refine_rotations) {
      out.argmin = refine_rotations(v_std, out.argmin, opts, budget);
    }
  }
  const SymMat4 gamma = pure_covariance(out.argmin);
  out.value = {value_from_squeezing(out.argmin.squeezing)};

  bool feasible = sr.merit < 1.0 && min_eigenvalue(v_std - gamma) >= -opts.psd_tol;
  if (feasible) {
    const SympSpectrum s = symplectic_spectrum(gamma);
    feasible = std::abs(s.mu_minus - 1.0) <= 1e-8 && std::abs(s.mu_plus - 1.0) <= 1e-8;
  }
  out.feasible = feasible;
  out.converged = sr.converged && budget.used <= budget.total;
  out.iterations = budget.used;

  const LocalSymplectic to_std = standard_form_transform(v);
  out.pure_cm = gamma.congruence(to_std.inverse_full());
  return out;
}

}  // namespace eofb
