#pragma once

#include <vector>

#include "chebcenter/linear_program.hpp"
#include "chebcenter/norm.hpp"

namespace chebcenter {

enum class SolveMethod { LP, Ellipsoid, MultiStart };

const char* to_string(SolveMethod method);

struct MinimaxSolution {
  Vec point;
  double upper = 0.0;  // objective at point
  double lower = 0.0;  // certified lower bound on the optimum
  int iterations = 0;
  SolveMethod method = SolveMethod::LP;
  bool converged = false;
};

// Objective  max_i ( weights_i * |x - sites_i| - offsets_i ).
double weighted_max_value(const NormSpec& space, const std::vector<Vec>& sites,
                          const Vec& weights, const Vec& offsets, const Vec& x);

// Minimises weighted_max_value over the space's feasible affine set: an LP
// for polyhedral norms, the ellipsoid method for L2. gap_tol is the target
// for upper - lower on the ellipsoid path.
MinimaxSolution solve_weighted_max(const NormSpec& space, const std::vector<Vec>& sites,
                                   const Vec& weights, const Vec& offsets, double gap_tol);

// Objective  (sum_i weights_i * |x - sites_i|^q)^(1/q),  q >= 1.
double power_sum_value(const NormSpec& space, const std::vector<Vec>& sites, const Vec& weights,
                       double q, const Vec& x);

MinimaxSolution solve_power_sum(const NormSpec& space, const std::vector<Vec>& sites,
                                const Vec& weights, double q, double gap_tol);

namespace lp_rows {

// Auxiliary LP columns each site needs to linearise its norm ball.
int aux_columns(const NormSpec& space);

// Rows for  weight * |x - site| - offset <= t  with x in columns [0, dim).
// t_col < 0 drops t, giving the plain ball  weight * |x - site| <= offset.
void add_norm_bound(LinearProgram& lp, const NormSpec& space, const Vec& site, double weight,
                    double offset, int t_col, int aux_col);

// Rows for  A x = b  when the space is constrained.
void add_affine(LinearProgram& lp, const NormSpec& space);

}  // namespace lp_rows

}  // namespace chebcenter
