#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chebcenter/ball_feasibility.hpp"

namespace chebcenter {

// Functional g with  inf_{y in K1} <g, y - c> = alpha1 = 1  (c the target
// center) and  |g|_* * r_target = alpha2 = 1 - epsilon.
struct Separation {
  Functional functional;
  double alpha1 = 1.0;
  double alpha2 = 0.0;
  double epsilon = 0.0;
};

// Strictly separates the intersection K1 from the target ball. The normal
// comes from the Euclidean closest pair of the two sets; the offsets are then
// recomputed exactly (LP or certified bound) so the returned scalars hold for
// the whole of K1 regardless of how well the pair converged.
// Unconstrained spaces only.
Separation separate(const NormSpec& space, std::span<const Ball> k1, const Ball& target,
                    double margin_tol = 1e-6);

enum class StepCase { AlreadyEmpty, Separated };

const char* to_string(StepCase c);

struct EqualizeStep {
  std::size_t index = 0;
  StepCase kind = StepCase::AlreadyEmpty;
  std::optional<Functional> separator;
  std::optional<double> epsilon;
  std::optional<Vec> direction;
  Vec new_center;
};

struct EqualizeResult {
  std::vector<EqualizeStep> steps;
  std::vector<Ball> new_balls;
  FeasibilityCertificate verification;
};

// Given balls B[x_i, r_i] with empty intersection and r > max r_i, relocates
// the centers to w_i so that B[x_i, r_i] is inside B[w_i, r] and the balls
// B[w_i, r] still have empty intersection. Balls are processed in input
// order; after every step the mixed system must certify Empty.
EqualizeResult equalize(const NormSpec& space, std::span<const Ball> balls, double r,
                        double margin_tol = 1e-6, double feas_tol = 1e-9);

// sup of <f, x - x_j> over x in B[w_j, r], from the stored step data alone:
// <f, w_j - x_j> + |f|_* r. For a Separated step this equals |f|_* r_j.
double step_functional_sup(const EqualizeStep& step, const Ball& original, double r);

}  // namespace chebcenter
