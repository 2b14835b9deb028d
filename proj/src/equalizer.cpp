#include "chebcenter/equalizer.hpp"
#include "chebcenter/format.hpp"

#include <algorithm>
#include <string>

#include "chebcenter/projection.hpp"

namespace chebcenter {

namespace {

std::vector<Ball> without(std::span<const Ball> balls, std::size_t skip) {
  std::vector<Ball> out;
  out.reserve(balls.size() - 1);
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (i != skip) out.push_back(balls[i]);
  }
  return out;
}

void require_unconstrained(const NormSpec& space) {
  if (space.constrained()) {
    throw Error(ErrorCode::InvalidArgument,
                "ball relocation is only supported on unconstrained spaces");
  }
}

}  // namespace

const char* to_string(StepCase c) {
  return c == StepCase::AlreadyEmpty ? "AlreadyEmpty" : "Separated";
}

Separation separate(const NormSpec& space, std::span<const Ball> k1, const Ball& target,
                    double margin_tol) {
  require_unconstrained(space);
  validate_balls(space, k1);
  validate_balls(space, std::span<const Ball>(&target, 1));
  if (intersect(space, k1).status != FeasibilityStatus::Witness) {
    throw Error(ErrorCode::NotDisjoint, "K1 is not certified nonempty");
  }
  std::vector<Ball> all(k1.begin(), k1.end());
  all.push_back(target);
  if (intersect(space, all).status != FeasibilityStatus::Empty) {
    throw Error(ErrorCode::NotDisjoint, "K1 and the target ball are not certified disjoint");
  }

  const ClosestPair pair = closest_pair(space, k1, target);
  const Vec raw = pair.near - pair.far;
  if (raw.isZero(0.0)) {
    throw Error(ErrorCode::SeparationTooThin, "closest pair collapsed to a point");
  }
  const ExtentBracket extent = linear_extent_bracket(space, k1, raw, Extremum::Min);
  const double alpha1_raw = extent.bound - raw.dot(target.center);
  const double alpha2_raw = dual_norm(space, raw) * target.radius;
  if (!(alpha1_raw > 0.0) || (alpha1_raw - alpha2_raw) / alpha1_raw < margin_tol) {
    throw Error(ErrorCode::SeparationTooThin,
                "separation margin " + fmt12((alpha1_raw - alpha2_raw) / alpha1_raw) +
                    " below " + fmt12(margin_tol));
  }
  Functional g(space, raw / alpha1_raw);
  const double alpha2 = g.dual_norm_value() * target.radius;
  return Separation{std::move(g), 1.0, alpha2, 1.0 - alpha2};
}

EqualizeResult equalize(const NormSpec& space, std::span<const Ball> balls, double r,
                        double margin_tol, double feas_tol) {
  require_unconstrained(space);
  validate_balls(space, balls);
  double largest = 0.0;
  for (const Ball& b : balls) largest = std::max(largest, b.radius);
  if (!(r > largest)) {
    throw Error(ErrorCode::PreconditionRadius,
                "common radius " + fmt12(r) + " must exceed every radius (max " +
                    fmt12(largest) + ")");
  }
  const FeasibilityCertificate input = intersect(space, balls, feas_tol);
  if (input.status == FeasibilityStatus::Witness) {
    throw Error(ErrorCode::NotEmpty, "the input balls intersect");
  }
  if (input.status == FeasibilityStatus::Undetermined) {
    throw Error(ErrorCode::SeparationTooThin, "the input balls are numerically touching");
  }

  EqualizeResult out;
  std::vector<Ball> current(balls.begin(), balls.end());
  for (std::size_t j = 0; j < balls.size(); ++j) {
    const Ball& original = balls[j];
    const std::vector<Ball> k1 = without(current, j);
    const FeasibilityCertificate k1_cert = intersect(space, k1, feas_tol);

    EqualizeStep step;
    step.index = j;
    if (k1_cert.status == FeasibilityStatus::Empty) {
      step.kind = StepCase::AlreadyEmpty;
      step.new_center = original.center;
    } else if (k1_cert.status == FeasibilityStatus::Witness) {
      Separation sep = separate(space, k1, original, margin_tol);
      Vec z = norming_direction(space, sep.functional);
      step.kind = StepCase::Separated;
      step.new_center = original.center + (r - original.radius) * z;
      step.epsilon = sep.epsilon;
      step.direction = std::move(z);
      step.separator = std::move(sep.functional);
    } else {
      throw Error(ErrorCode::SeparationTooThin,
                  "remaining balls at step " + std::to_string(j) + " are numerically touching");
    }
    current[j] = Ball{step.new_center, r};

    out.verification = intersect(space, current, feas_tol);
    if (out.verification.status != FeasibilityStatus::Empty) {
      throw Error(ErrorCode::LoopInvariantViolated,
                  "mixed system after step " + std::to_string(j) + " is " +
                      to_string(out.verification.status));
    }
    out.steps.push_back(std::move(step));
  }
  out.new_balls = std::move(current);
  return out;
}

double step_functional_sup(const EqualizeStep& step, const Ball& original, double r) {
  if (!step.separator) {
    throw Error(ErrorCode::InvalidArgument, "step carries no separating functional");
  }
  const Functional& f = *step.separator;
  return f(step.new_center - original.center) + f.dual_norm_value() * r;
}

}  // namespace chebcenter
