#include "chebcenter/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace chebcenter {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Deeper cuts are valid but let P degenerate in floating point.
constexpr double kMaxCutDepth = 0.5;

struct Cut {
  const ConvexFunction* objective;
  const ConvexFunction* constraint;  // may be null
};

EllipsoidResult run_interval(const Cut& cut, double center, double radius,
                             const EllipsoidOptions& opt) {
  EllipsoidResult res;
  res.point = Vec::Constant(1, center);
  res.value = kInf;
  res.lower_bound = -kInf;
  double lo = center - radius;
  double hi = center + radius;
  Vec u(1), g(1);
  for (; res.iterations < opt.max_iterations; ++res.iterations) {
    const double c = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    u(0) = c;
    if (cut.constraint) {
      const double hv = (*cut.constraint)(u, g);
      if (hv > 0.0) {
        if (g(0) == 0.0) break;
        const double bound = c - hv / g(0);
        if (g(0) > 0.0) hi = std::min(hi, bound);
        else lo = std::max(lo, bound);
        if (lo > hi) break;
        continue;
      }
    }
    const double fv = (*cut.objective)(u, g);
    if (fv < res.value) {
      res.value = fv;
      res.point = u;
    }
    res.lower_bound = std::max(res.lower_bound, fv - std::abs(g(0)) * half);
    if (g(0) == 0.0) res.lower_bound = std::max(res.lower_bound, fv);
    if (res.value - res.lower_bound <= opt.gap_tol) {
      res.converged = true;
      break;
    }
    const double bound = c + (res.value - fv) / g(0);
    if (g(0) > 0.0) hi = std::min(hi, bound);
    else lo = std::max(lo, bound);
    if (!(hi - lo > 0.0)) {
      res.lower_bound = std::max(res.lower_bound, std::min(res.value, fv));
      res.converged = res.value - res.lower_bound <= opt.gap_tol;
      break;
    }
  }
  return res;
}

EllipsoidResult run_ellipsoid(const Cut& cut, const Vec& center, double radius,
                              const EllipsoidOptions& opt) {
  const Eigen::Index n = center.size();
  EllipsoidResult res;
  res.point = center;
  res.value = kInf;
  res.lower_bound = -kInf;
  if (n == 0) {
    Vec g;
    if (cut.constraint && (*cut.constraint)(center, g) > 0.0) return res;
    res.value = (*cut.objective)(center, g);
    res.lower_bound = res.value;
    res.converged = true;
    return res;
  }
  if (n == 1) return run_interval(cut, center(0), radius, opt);

  // The ellipsoid is {x + B u : |u| <= 1}; updating the factor B instead of
  // P = B B' keeps g'Pg = |B'g|^2 nonnegative under rounding.
  const double nd = static_cast<double>(n);
  Vec x = center;
  Mat B = Mat::Identity(n, n) * radius;
  Vec g(n);
  for (; res.iterations < opt.max_iterations; ++res.iterations) {
    double alpha = 0.0;
    bool objective_cut = true;
    if (cut.constraint) {
      const double hv = (*cut.constraint)(x, g);
      if (hv > 0.0) {
        objective_cut = false;
        const double sq = (B.transpose() * g).norm();
        if (!(sq > 0.0)) break;
        alpha = hv / sq;
        // The ellipsoid misses the feasible set entirely.
        if (alpha >= 1.0) break;
        alpha = std::min(alpha, kMaxCutDepth);
      }
    }
    if (objective_cut) {
      const double fv = (*cut.objective)(x, g);
      if (fv < res.value) {
        res.value = fv;
        res.point = x;
      }
      const double sq = (B.transpose() * g).norm();
      if (!(sq > 0.0)) {
        // Zero subgradient (or collapsed ellipsoid): x is optimal up to
        // rounding.
        if (g.isZero(0.0)) res.lower_bound = std::max(res.lower_bound, fv);
        res.converged = res.value - res.lower_bound <= opt.gap_tol;
        break;
      }
      res.lower_bound = std::max(res.lower_bound, fv - sq);
      if (res.value - res.lower_bound <= opt.gap_tol) {
        res.converged = true;
        break;
      }
      alpha = std::min((fv - res.value) / sq, kMaxCutDepth);
    }
    const Vec Btg = B.transpose() * g;
    const Vec p = Btg / Btg.norm();
    const Vec Bp = B * p;
    x -= ((1.0 + nd * alpha) / (nd + 1.0)) * Bp;
    const double shrink = (nd * nd / (nd * nd - 1.0)) * (1.0 - alpha * alpha);
    const double rank_one = 2.0 * (1.0 + nd * alpha) / ((nd + 1.0) * (1.0 + alpha));
    // P' = shrink (P - rank_one Bp Bp') = B' B'' with B' = s B (I + (t - 1) p p').
    const double t = std::sqrt(std::max(0.0, 1.0 - rank_one));
    B = std::sqrt(shrink) * (B + (t - 1.0) * Bp * p.transpose());
  }
  return res;
}

}  // namespace

EllipsoidResult ellipsoid_minimize(const ConvexFunction& f, const Vec& center, double radius,
                                   const EllipsoidOptions& options) {
  return run_ellipsoid(Cut{&f, nullptr}, center, radius, options);
}

EllipsoidResult ellipsoid_minimize_constrained(const ConvexFunction& f, const ConvexFunction& h,
                                               const Vec& center, double radius,
                                               const EllipsoidOptions& options) {
  return run_ellipsoid(Cut{&f, &h}, center, radius, options);
}

DirectSearchResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& start,
                               double step, int max_evaluations, double tol) {
  const Eigen::Index n = start.size();
  DirectSearchResult out;
  if (n == 0) {
    out.point = start;
    out.value = f(start);
    out.evaluations = 1;
    return out;
  }
  std::vector<Vec> simplex(n + 1, start);
  std::vector<double> values(n + 1);
  for (Eigen::Index k = 0; k < n; ++k) simplex[k + 1](k) += step;
  for (Eigen::Index i = 0; i <= n; ++i) values[i] = f(simplex[i]);
  out.evaluations = static_cast<int>(n + 1);

  std::vector<Eigen::Index> order(n + 1);
  while (out.evaluations < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values[a] < values[b]; });
    const Eigen::Index best = order.front();
    const Eigen::Index worst = order.back();
    const Eigen::Index second = order[n - 1];

    double spread = 0.0;
    for (Eigen::Index i = 0; i <= n; ++i) {
      spread = std::max(spread, (simplex[i] - simplex[best]).lpNorm<Eigen::Infinity>());
    }
    if (spread <= tol && std::abs(values[worst] - values[best]) <= tol) break;

    Vec centroid = Vec::Zero(n);
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(n);

    const Vec reflected = centroid + (centroid - simplex[worst]);
    const double fr = f(reflected);
    ++out.evaluations;
    if (fr < values[best]) {
      const Vec expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = f(expanded);
      ++out.evaluations;
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Vec contracted = outside ? Vec(centroid + 0.5 * (reflected - centroid))
                                   : Vec(centroid + 0.5 * (simplex[worst] - centroid));
    const double fc = f(contracted);
    ++out.evaluations;
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = f(simplex[i]);
      ++out.evaluations;
    }
  }
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (values[i] < values[best]) best = i;
  }
  out.point = simplex[best];
  out.value = values[best];
  return out;
}

}  // namespace chebcenter
