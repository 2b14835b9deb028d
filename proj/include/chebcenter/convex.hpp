#pragma once

#include <functional>

#include "chebcenter/norm.hpp"

namespace chebcenter {

// Convex function on R^k: returns f(u) and writes one subgradient.
using ConvexFunction = std::function<double(const Vec& u, Vec& subgradient)>;

struct EllipsoidOptions {
  double gap_tol = 1e-12;
  int max_iterations = 100000;
};

struct EllipsoidResult {
  Vec point;
  double value = 0.0;
  // Valid lower bound on the minimum provided the initial ball contains a
  // minimiser.
  double lower_bound = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Deep-cut ellipsoid method started from the Euclidean ball B(center, radius).
// Each objective cut at u_k yields the bound f* >= f(u_k) - sqrt(g'Pg), so the
// result carries a two-sided bracket on the optimum.
EllipsoidResult ellipsoid_minimize(const ConvexFunction& f, const Vec& center, double radius,
                                   const EllipsoidOptions& options = {});

// Same, for min f(u) s.t. h(u) <= 0. Infeasible iterates receive feasibility
// cuts. value is +inf when no feasible iterate was seen.
EllipsoidResult ellipsoid_minimize_constrained(const ConvexFunction& f, const ConvexFunction& h,
                                               const Vec& center, double radius,
                                               const EllipsoidOptions& options = {});

struct DirectSearchResult {
  Vec point;
  double value = 0.0;
  int evaluations = 0;
};

// Nelder-Mead simplex search. No convexity assumed; local only.
DirectSearchResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& start,
                               double step, int max_evaluations = 20000, double tol = 1e-13);

}  // namespace chebcenter
