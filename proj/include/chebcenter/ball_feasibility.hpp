#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chebcenter/centers.hpp"
#include "chebcenter/norm.hpp"

namespace chebcenter {

// Closed ball B[center, radius] in the space's norm.
struct Ball {
  Vec center;
  double radius = 0.0;
};

enum class FeasibilityStatus { Witness, Empty, Undetermined };

const char* to_string(FeasibilityStatus status);

struct FeasibilityCertificate {
  FeasibilityStatus status = FeasibilityStatus::Undetermined;
  std::optional<Vec> witness;
  // min_x max_i (|x - x_i| - r_i), evaluated at the returned minimiser.
  double depth = 0.0;
  // Certified lower bound on the same quantity.
  double depth_lower_bound = 0.0;
  // For an empty pair of balls (unconstrained spaces only): g with
  // inf over the first ball > sup over the second.
  std::optional<Functional> separator;
};

void validate_balls(const NormSpec& space, std::span<const Ball> balls);

// Witness when depth <= feas_tol, Empty when the depth lower bound reaches
// 10 * feas_tol, Undetermined in between.
FeasibilityCertificate intersect(const NormSpec& space, std::span<const Ball> balls,
                                 double feas_tol = 1e-9);

enum class Extremum { Min, Max };

struct ExtentBracket {
  // Value attained at a point of the intersection.
  double value = 0.0;
  // Certified bound on the other side: a lower bound on the minimum (Min)
  // or an upper bound on the maximum (Max).
  double bound = 0.0;
  Vec argument;
};

// Optimal value of <g, x> over the intersection of the balls.
double linear_extent(const NormSpec& space, std::span<const Ball> balls, const Vec& g,
                     Extremum direction);
ExtentBracket linear_extent_bracket(const NormSpec& space, std::span<const Ball> balls,
                                    const Vec& g, Extremum direction);

// Balls of radius rad(F) + tol around the points meet; balls of radius
// rad(F) - 10 tol do not (skipped when that radius would be negative).
bool duality_check(const PointSet& F, double tol = 1e-9);

}  // namespace chebcenter
