#include "chebcenter/ball_feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chebcenter/convex.hpp"
#include "chebcenter/linear_program.hpp"
#include "chebcenter/minimax.hpp"
#include "chebcenter/projection.hpp"

namespace chebcenter {

namespace {

constexpr double kEmptyMarginFactor = 10.0;
constexpr double kInnerGapFactor = 1e-3;
constexpr double kExtentGapTol = 1e-11;

std::vector<Vec> centers_of(std::span<const Ball> balls) {
  std::vector<Vec> c;
  c.reserve(balls.size());
  for (const Ball& b : balls) c.push_back(b.center);
  return c;
}

Vec radii_of(std::span<const Ball> balls) {
  Vec r(static_cast<Eigen::Index>(balls.size()));
  for (std::size_t i = 0; i < balls.size(); ++i) r(i) = balls[i].radius;
  return r;
}

ExtentBracket min_extent_lp(const NormSpec& space, std::span<const Ball> balls, const Vec& g) {
  const int d = space.dim();
  const int aux = lp_rows::aux_columns(space);
  LinearProgram lp(d + static_cast<int>(balls.size()) * aux);
  for (int k = 0; k < d; ++k) {
    lp.set_free(k);
    lp.set_objective(k, g(k));
  }
  for (std::size_t i = 0; i < balls.size(); ++i) {
    lp_rows::add_norm_bound(lp, space, balls[i].center, 1.0, balls[i].radius, -1,
                            d + static_cast<int>(i) * aux);
  }
  lp_rows::add_affine(lp, space);
  const LpSolution sol = lp.minimize();
  if (sol.status == LpStatus::Infeasible) {
    throw Error(ErrorCode::EmptyDomain, "linear extent over an empty intersection");
  }
  if (sol.status != LpStatus::Optimal) {
    throw Error(ErrorCode::Unbounded, "linear extent LP did not reach optimality");
  }
  ExtentBracket out;
  out.argument = sol.x.head(d);
  out.value = g.dot(out.argument);
  out.bound = out.value;
  return out;
}

ExtentBracket min_extent_ellipsoid(const NormSpec& space, std::span<const Ball> balls,
                                   const Vec& g) {
  const AffineChart chart(space);
  const Mat& basis = chart.basis();
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < balls.size(); ++i) {
    if (balls[i].radius < balls[smallest].radius) smallest = i;
  }
  const ConvexFunction objective = [&](const Vec& u, Vec& sub) {
    sub = basis.transpose() * g;
    return g.dot(chart.to_ambient(u));
  };
  const ConvexFunction constraint = [&](const Vec& u, Vec& sub) {
    const Vec x = chart.to_ambient(u);
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const double v = norm(space, x - balls[i].center) - balls[i].radius;
      if (v > worst) {
        worst = v;
        arg = i;
      }
    }
    sub = basis.transpose() * norm_subgradient(space, x - balls[arg].center);
    return worst;
  };
  const double radius =
      euclidean_factor(space) * balls[smallest].radius * (1.0 + 1e-9) + 1e-12;
  EllipsoidOptions opt;
  opt.gap_tol = kExtentGapTol;
  const EllipsoidResult r = ellipsoid_minimize_constrained(
      objective, constraint, chart.to_local(balls[smallest].center), radius, opt);
  if (!std::isfinite(r.value)) {
    throw Error(ErrorCode::EmptyDomain, "linear extent over an empty intersection");
  }
  // Each ball contains the intersection, so its support value bounds too.
  const double dual = dual_norm(space, g);
  double support = -std::numeric_limits<double>::infinity();
  for (const Ball& b : balls) support = std::max(support, g.dot(b.center) - dual * b.radius);

  ExtentBracket out;
  out.argument = chart.to_ambient(r.point);
  out.value = r.value;
  out.bound = std::min(std::max(r.lower_bound, support), out.value);
  return out;
}

}  // namespace

const char* to_string(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::Witness: return "Witness";
    case FeasibilityStatus::Empty: return "Empty";
    case FeasibilityStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

void validate_balls(const NormSpec& space, std::span<const Ball> balls) {
  if (balls.empty()) throw Error(ErrorCode::InvalidArgument, "no balls given");
  for (const Ball& b : balls) {
    check_dim(space, b.center, "ball center");
    if (!b.center.allFinite() || !std::isfinite(b.radius)) {
      throw Error(ErrorCode::InvalidArgument, "non-finite ball data");
    }
    if (b.radius < 0.0) throw Error(ErrorCode::InvalidArgument, "negative ball radius");
  }
}

FeasibilityCertificate intersect(const NormSpec& space, std::span<const Ball> balls,
                                 double feas_tol) {
  validate_balls(space, balls);
  if (!(feas_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "feas_tol must be positive");
  const MinimaxSolution sol =
      solve_weighted_max(space, centers_of(balls), Vec::Ones(static_cast<Eigen::Index>(balls.size())),
                         radii_of(balls), kInnerGapFactor * feas_tol);

  FeasibilityCertificate cert;
  cert.depth = sol.upper;
  cert.depth_lower_bound = sol.lower;
  if (sol.upper <= feas_tol) {
    cert.status = FeasibilityStatus::Witness;
    cert.witness = sol.point;
  } else if (sol.lower >= kEmptyMarginFactor * feas_tol) {
    cert.status = FeasibilityStatus::Empty;
    if (balls.size() == 2 && !space.constrained()) {
      const ClosestPair pair = closest_pair(space, balls.subspan(0, 1), balls[1]);
      const Vec normal = pair.near - pair.far;
      if (normal.norm() > 0.0) cert.separator = Functional(space, normal);
    }
  } else {
    cert.status = FeasibilityStatus::Undetermined;
  }
  return cert;
}

ExtentBracket linear_extent_bracket(const NormSpec& space, std::span<const Ball> balls,
                                    const Vec& g, Extremum direction) {
  validate_balls(space, balls);
  check_dim(space, g, "functional");
  const Vec oriented = direction == Extremum::Min ? g : Vec(-g);
  ExtentBracket out = space.polyhedral() ? min_extent_lp(space, balls, oriented)
                                         : min_extent_ellipsoid(space, balls, oriented);
  if (direction == Extremum::Max) {
    out.value = -out.value;
    out.bound = -out.bound;
  }
  return out;
}

double linear_extent(const NormSpec& space, std::span<const Ball> balls, const Vec& g,
                     Extremum direction) {
  return linear_extent_bracket(space, balls, g, direction).value;
}

bool duality_check(const PointSet& F, double tol) {
  if (!F.unit_weights()) {
    throw Error(ErrorCode::InvalidArgument, "duality check expects unit weights");
  }
  const CenterResult center = chebyshev_center(F, Aggregator::max_weighted(), tol);
  const double rad = center.radius;
  const auto balls_at = [&](double r) {
    std::vector<Ball> balls;
    for (const Vec& a : F.points()) balls.push_back({a, r});
    return balls;
  };
  if (intersect(F.space(), balls_at(rad + tol), tol).status != FeasibilityStatus::Witness) {
    return false;
  }
  const double shrunk = rad - kEmptyMarginFactor * tol;
  if (shrunk < 0.0) return true;
  return intersect(F.space(), balls_at(shrunk), tol).status != FeasibilityStatus::Witness;
}

}  // namespace chebcenter
