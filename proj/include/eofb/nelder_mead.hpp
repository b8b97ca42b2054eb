#pragma once

// Downhill simplex minimizer. Small, dependency-free, deterministic.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace eofb {

struct NelderMeadOptions {
  double f_tol = 1e-15;   // spread of simplex values
  double x_tol = 1e-12;   // simplex diameter (max-norm)
  long max_evals = 10000;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  long evals = 0;
  bool converged = false;
};

/// Minimizes f starting from the simplex {x0, x0 + step_i e_i}.
template <class F>
NelderMeadResult nelder_mead(F&& f, const Eigen::VectorXd& x0, const Eigen::VectorXd& step,
                             const NelderMeadOptions& opts = {}) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  NelderMeadResult res;

  auto eval = [&](const Eigen::VectorXd& x) {
    ++res.evals;
    return f(x);
  };

  vals[0] = eval(pts[0]);
  for (int i = 0; i < n; ++i) {
    pts[i + 1](i) += step(i);
    vals[i + 1] = eval(pts[i + 1]);
  }

  std::vector<int> order(n + 1);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int second = order[n - 1];

    double diameter = 0.0;
    for (int i = 0; i <= n; ++i) {
      diameter = std::max(diameter, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
    }
    if (std::abs(vals[worst] - vals[best]) <= opts.f_tol && diameter <= opts.x_tol) {
      res.converged = true;
      break;
    }
    if (res.evals >= opts.max_evals) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= n;

    const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    // Contraction, outside or inside.
    const bool outside = fr < vals[worst];
    const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                       : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }

  const auto it = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  res.value = *it;
  return res;
}

}  // namespace eofb
