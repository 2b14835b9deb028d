#pragma once

#include <span>

#include "chebcenter/ball_feasibility.hpp"

namespace chebcenter {

// Euclidean projections onto norm balls of an unconstrained space.
Vec project_onto_ball(const NormSpec& space, const Ball& ball, const Vec& x);

struct ProjectionResult {
  Vec point;
  int sweeps = 0;
  bool converged = false;
};

// Dykstra's algorithm: Euclidean projection of x onto the intersection of
// the balls.
ProjectionResult project_onto_intersection(const NormSpec& space, std::span<const Ball> balls,
                                           const Vec& x, int max_sweeps = 10000,
                                           double tol = 1e-13);

struct ClosestPair {
  Vec near;  // in the intersection
  Vec far;   // in the target ball
  int iterations = 0;
  bool converged = false;
};

// Alternating projections between the intersection of `balls` and `target`.
ClosestPair closest_pair(const NormSpec& space, std::span<const Ball> balls, const Ball& target,
                         int max_iterations = 10000, double tol = 1e-12);

}  // namespace chebcenter
