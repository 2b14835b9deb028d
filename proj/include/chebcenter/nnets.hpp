#pragma once

#include <span>
#include <vector>

#include "chebcenter/centers.hpp"

namespace chebcenter {

struct NNetResult {
  std::vector<Vec> nets;
  double covering_radius = 0.0;
  // Index of the nearest net point for each point of F (ties: lowest index).
  std::vector<std::size_t> assignment;
  bool optimal = false;
};

// Enumeration budget of the exact method.
inline constexpr std::size_t kExactMaxPoints = 14;
inline constexpr int kExactMaxNets = 4;

// R(F, S) = max over F of the distance to the nearest net point.
double covering_radius(const PointSet& F, std::span<const Vec> nets);

std::vector<std::size_t> nearest_assignment(const PointSet& F, std::span<const Vec> nets);

// Enumerates every partition of F into at most n blocks (restricted growth
// strings) and places one unweighted Chebyshev center per block. Moving a
// net point to the center of the points it serves never increases the
// covering radius, so the best partition attains R_n(F) up to solver
// tolerance. Fewer than n blocks are allowed; unused net slots repeat the
// first net point.
NNetResult best_nnet_exact(const PointSet& F, int n, double tol = 1e-9);

// Farthest-first seeding followed by assign / re-center rounds.
NNetResult best_nnet_heuristic(const PointSet& F, int n, double tol = 1e-9);

}  // namespace chebcenter
