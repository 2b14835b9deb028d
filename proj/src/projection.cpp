#include "chebcenter/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace chebcenter {

namespace {

// Projection of v onto {w : |w|_1 <= r} by sorting (soft thresholding).
Vec project_l1(const Vec& v, double r) {
  if (v.lpNorm<1>() <= r) return v;
  if (r <= 0.0) return Vec::Zero(v.size());
  std::vector<double> u(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) u[k] = std::abs(v(k));
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - r) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  Vec w(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mag = std::max(std::abs(v(k)) - theta, 0.0);
    w(k) = v(k) < 0.0 ? -mag : mag;
  }
  return w;
}

}  // namespace

Vec project_onto_ball(const NormSpec& space, const Ball& ball, const Vec& x) {
  const Vec v = x - ball.center;
  const double r = ball.radius;
  switch (space.kind()) {
    case NormKind::L1: return ball.center + project_l1(v, r);
    case NormKind::L2: {
      const double n = v.norm();
      if (n <= r) return x;
      return ball.center + v * (r / n);
    }
    case NormKind::LInf:
    case NormKind::WeightedSup: {
      Vec w = v;
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        const double half = r / space.scales()(k);
        w(k) = std::clamp(v(k), -half, half);
      }
      return ball.center + w;
    }
  }
  return x;
}

ProjectionResult project_onto_intersection(const NormSpec& space, std::span<const Ball> balls,
                                           const Vec& x, int max_sweeps, double tol) {
  ProjectionResult out;
  out.point = x;
  if (balls.size() == 1) {
    out.point = project_onto_ball(space, balls.front(), x);
    out.converged = true;
    return out;
  }
  std::vector<Vec> increments(balls.size(), Vec::Zero(x.size()));
  const double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
  for (; out.sweeps < max_sweeps; ++out.sweeps) {
    const Vec before = out.point;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const Vec z = out.point + increments[i];
      out.point = project_onto_ball(space, balls[i], z);
      increments[i] = z - out.point;
    }
    if ((out.point - before).lpNorm<Eigen::Infinity>() <= tol * scale) {
      out.converged = true;
      ++out.sweeps;
      break;
    }
  }
  return out;
}

ClosestPair closest_pair(const NormSpec& space, std::span<const Ball> balls, const Ball& target,
                         int max_iterations, double tol) {
  ClosestPair out;
  out.far = target.center;
  out.near = project_onto_intersection(space, balls, out.far).point;
  const double scale = std::max(1.0, target.center.lpNorm<Eigen::Infinity>());
  for (; out.iterations < max_iterations; ++out.iterations) {
    const Vec far = project_onto_ball(space, target, out.near);
    const Vec near = project_onto_intersection(space, balls, far).point;
    const double moved = std::max((far - out.far).lpNorm<Eigen::Infinity>(),
                                  (near - out.near).lpNorm<Eigen::Infinity>());
    out.far = far;
    out.near = near;
    if (moved < tol * scale) {
      out.converged = true;
      ++out.iterations;
      break;
    }
  }
  return out;
}

}  // namespace chebcenter
