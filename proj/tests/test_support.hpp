#pragma once

// Shared helpers and independent oracles for the test suites. Nothing here
// calls into the solvers under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "chebcenter/norm.hpp"

namespace chebtest {

using chebcenter::Mat;
using chebcenter::NormSpec;
using chebcenter::Vec;

inline Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) out(k++) = x;
  return out;
}

inline Vec random_vec(std::mt19937_64& rng, int d, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec x(d);
  for (int k = 0; k < d; ++k) x(k) = u(rng);
  return x;
}

inline std::vector<NormSpec> all_norms(int d) {
  Vec scales(d);
  for (int k = 0; k < d; ++k) scales(k) = 0.5 + 0.75 * k;
  return {NormSpec::l1(d), NormSpec::l2(d), NormSpec::linf(d), NormSpec::weighted_sup(scales)};
}

inline double weighted_max(const NormSpec& s, const std::vector<Vec>& pts,
                           const std::vector<double>& w, const Vec& x) {
  double r = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) r = std::max(r, w[i] * chebcenter::norm(s, x - pts[i]));
  return r;
}

// Zoom-grid minimiser: evaluates f on a (2m+1)^d grid around the incumbent,
// shrinks the window by `shrink` and repeats. The result is an attained value, hence an
// upper bound on the minimum; for the Lipschitz convex objectives used here
// it converges to the minimum.
inline double zoom_grid_min(const std::function<double(const Vec&)>& f, Vec center, double half,
                            int m, int rounds, Vec* argmin = nullptr,
                            double shrink = 0.5) {
  const int d = static_cast<int>(center.size());
  double best = f(center);
  Vec best_x = center;
  std::vector<int> idx(d);
  for (int round = 0; round < rounds; ++round) {
    const double step = half / m;
    std::fill(idx.begin(), idx.end(), -m);
    while (true) {
      Vec x = center;
      for (int k = 0; k < d; ++k) x(k) += idx[k] * step;
      const double val = f(x);
      if (val < best) {
        best = val;
        best_x = x;
      }
      int k = 0;
      while (k < d && ++idx[k] > m) idx[k++] = -m;
      if (k == d) break;
    }
    center = best_x;
    half *= shrink;
  }
  if (argmin) *argmin = best_x;
  return best;
}

// Weighted 1-D minimax is the largest pairwise bound; with the sup norm
// the problem separates by coordinate.
inline double linf_weighted_radius(const std::vector<Vec>& pts, const std::vector<double>& w,
                                   const Vec& scales) {
  double r = 0.0;
  for (Eigen::Index k = 0; k < pts.front().size(); ++k) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        r = std::max(r, scales(k) * std::abs(pts[i](k) - pts[j](k)) / (1.0 / w[i] + 1.0 / w[j]));
      }
    }
  }
  return r;
}

// Exact weighted radius for polyhedral norms in dimension <= 2: sup norms
// separate by coordinate, and in the plane |x|_1 = |Rx|_inf with
// R = [[1, 1], [1, -1]]. Empty optional for other cases.
inline std::optional<double> polyhedral_radius(const NormSpec& s, const std::vector<Vec>& pts,
                                               const std::vector<double>& w) {
  using chebcenter::NormKind;
  if (s.kind() == NormKind::LInf || s.kind() == NormKind::WeightedSup) {
    return linf_weighted_radius(pts, w, s.scales());
  }
  if (s.kind() == NormKind::L1 && s.dim() <= 2) {
    if (s.dim() == 1) return linf_weighted_radius(pts, w, Vec::Ones(1));
    Mat R(2, 2);
    R << 1, 1, 1, -1;
    std::vector<Vec> rotated;
    for (const Vec& p : pts) rotated.push_back(R * p);
    return linf_weighted_radius(rotated, w, Vec::Ones(2));
  }
  return std::nullopt;
}

// Exact test for a common point of Euclidean disks (or intervals) in
// dimension <= 2: the lowest point of a nonempty intersection is the bottom of
// one disk or a crossing of two circles.
inline bool disks_intersect(const std::vector<Vec>& centers, const std::vector<double>& radii,
                            double slack) {
  const auto inside_all = [&](const Vec& x) {
    for (std::size_t i = 0; i < centers.size(); ++i) {
      if ((x - centers[i]).norm() > radii[i] + slack) return false;
    }
    return true;
  };
  const Eigen::Index d = centers.front().size();
  std::vector<Vec> candidates;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    Vec low = centers[i];
    low(d - 1) -= radii[i];
    candidates.push_back(low);
  }
  if (d == 2) {
    for (std::size_t i = 0; i < centers.size(); ++i) {
      for (std::size_t j = i + 1; j < centers.size(); ++j) {
        const Vec delta = centers[j] - centers[i];
        const double dist = delta.norm();
        if (dist == 0.0 || dist > radii[i] + radii[j] || dist < std::abs(radii[i] - radii[j])) continue;
        const double along = (dist * dist + radii[i] * radii[i] - radii[j] * radii[j]) / (2 * dist);
        const double h = std::sqrt(std::max(0.0, radii[i] * radii[i] - along * along));
        const Vec base = centers[i] + (along / dist) * delta;
        const Vec perp = v({-delta(1), delta(0)}) / dist;
        candidates.push_back(base + h * perp);
        candidates.push_back(base - h * perp);
      }
    }
  }
  for (const Vec& c : candidates) {
    if (inside_all(c)) return true;
  }
  return false;
}

// Weighted Euclidean radius in dimension <= 2 by bisection on the exact disk
// test above.
inline double l2_weighted_radius(const std::vector<Vec>& pts, const std::vector<double>& w) {
  double lo = 0.0;
  double hi = 1.0;
  const auto feasible = [&](double r) {
    std::vector<double> radii;
    for (double wi : w) radii.push_back(r / wi);
    return disks_intersect(pts, radii, 1e-12 * (1 + r));
  };
  while (!feasible(hi)) hi *= 2;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Coordinatewise interval intersection of sup-norm balls (boxes).
inline bool boxes_intersect(const std::vector<Vec>& centers, const std::vector<double>& radii,
                            const Vec& scales) {
  for (Eigen::Index k = 0; k < centers.front().size(); ++k) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers.size(); ++i) {
      lo = std::max(lo, centers[i](k) - radii[i] / scales(k));
      hi = std::min(hi, centers[i](k) + radii[i] / scales(k));
    }
    if (lo > hi) return false;
  }
  return true;
}

}  // namespace chebtest
