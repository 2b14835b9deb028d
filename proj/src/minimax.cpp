#include "chebcenter/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chebcenter/convex.hpp"

namespace chebcenter {

namespace {

constexpr int kMaxEllipsoidIterations = 100000;

Vec centroid(const std::vector<Vec>& sites) {
  Vec c = Vec::Zero(sites.front().size());
  for (const Vec& s : sites) c += s;
  return c / static_cast<double>(sites.size());
}

void check_sites(const NormSpec& space, const std::vector<Vec>& sites, const Vec& weights) {
  if (sites.empty()) throw Error(ErrorCode::InvalidArgument, "no sites");
  if (weights.size() != static_cast<Eigen::Index>(sites.size())) {
    throw Error(ErrorCode::DimensionMismatch, "weight count differs from site count");
  }
  for (const Vec& s : sites) check_dim(space, s, "site");
}

// Runs the ellipsoid method in chart coordinates. bound(i, f0) must give a
// space-norm radius around site i containing every minimiser.
template <typename Objective, typename Bound>
MinimaxSolution ellipsoid_in_chart(const NormSpec& space, const std::vector<Vec>& sites,
                                   const Objective& objective, const Bound& bound,
                                   double gap_tol) {
  const AffineChart chart(space);
  const Vec x0 = chart.project(centroid(sites));
  Vec unused;
  const double f0 = objective(x0, unused);
  const double kappa = euclidean_factor(space);

  std::size_t anchor = 0;
  double radius = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const double r = kappa * bound(i, f0);
    if (r < radius) {
      radius = r;
      anchor = i;
    }
  }
  // Slack for rounding in the bound itself.
  radius = radius * (1.0 + 1e-9) + 1e-12;

  const Mat& basis = chart.basis();
  const ConvexFunction f = [&](const Vec& u, Vec& g) {
    Vec gx;
    const double v = objective(chart.to_ambient(u), gx);
    g = basis.transpose() * gx;
    return v;
  };
  EllipsoidOptions opt;
  opt.gap_tol = gap_tol;
  opt.max_iterations = kMaxEllipsoidIterations;
  const EllipsoidResult r = ellipsoid_minimize(f, chart.to_local(sites[anchor]), radius, opt);

  MinimaxSolution out;
  out.point = chart.to_ambient(r.point);
  out.upper = objective(out.point, unused);
  out.lower = std::min(r.lower_bound, out.upper);
  out.iterations = r.iterations;
  out.method = SolveMethod::Ellipsoid;
  out.converged = r.converged;
  return out;
}

}  // namespace

const char* to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::LP: return "LP";
    case SolveMethod::Ellipsoid: return "Ellipsoid";
    case SolveMethod::MultiStart: return "MultiStart";
  }
  return "?";
}

double weighted_max_value(const NormSpec& space, const std::vector<Vec>& sites,
                          const Vec& weights, const Vec& offsets, const Vec& x) {
  double v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    v = std::max(v, weights(i) * norm(space, x - sites[i]) - offsets(i));
  }
  return v;
}

namespace lp_rows {

int aux_columns(const NormSpec& space) {
  return space.kind() == NormKind::L1 ? space.dim() : 0;
}

void add_norm_bound(LinearProgram& lp, const NormSpec& space, const Vec& site, double weight,
                    double offset, int t_col, int aux_col) {
  const int d = space.dim();
  const int nv = lp.num_vars();
  if (space.kind() == NormKind::L1) {
    // u_k >= |x_k - site_k|,  weight * sum_k u_k - t <= offset
    for (int k = 0; k < d; ++k) {
      Vec row = Vec::Zero(nv);
      row(k) = 1.0;
      row(aux_col + k) = -1.0;
      lp.add_row(row, RowSense::LessEqual, site(k));
      row(k) = -1.0;
      lp.add_row(row, RowSense::LessEqual, -site(k));
    }
    Vec row = Vec::Zero(nv);
    for (int k = 0; k < d; ++k) row(aux_col + k) = weight;
    if (t_col >= 0) row(t_col) = -1.0;
    lp.add_row(row, RowSense::LessEqual, offset);
    return;
  }
  // Box-shaped balls: weight * s_k * |x_k - site_k| - t <= offset.
  for (int k = 0; k < d; ++k) {
    const double a = weight * space.scales()(k);
    Vec row = Vec::Zero(nv);
    row(k) = a;
    if (t_col >= 0) row(t_col) = -1.0;
    lp.add_row(row, RowSense::LessEqual, offset + a * site(k));
    row(k) = -a;
    lp.add_row(row, RowSense::LessEqual, offset - a * site(k));
  }
}

void add_affine(LinearProgram& lp, const NormSpec& space) {
  if (!space.constrained()) return;
  const auto& c = *space.constraints();
  for (Eigen::Index i = 0; i < c.A.rows(); ++i) {
    Vec row = Vec::Zero(lp.num_vars());
    row.head(space.dim()) = c.A.row(i).transpose();
    lp.add_row(row, RowSense::Equal, c.b(i));
  }
}

}  // namespace lp_rows

MinimaxSolution solve_weighted_max(const NormSpec& space, const std::vector<Vec>& sites,
                                   const Vec& weights, const Vec& offsets, double gap_tol) {
  check_sites(space, sites, weights);
  if (offsets.size() != weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "offset count differs from site count");
  }
  const int d = space.dim();
  const int n = static_cast<int>(sites.size());

  if (space.polyhedral()) {
    const int aux = lp_rows::aux_columns(space);
    const int t_col = d;
    LinearProgram lp(d + 1 + n * aux);
    for (int k = 0; k <= d; ++k) lp.set_free(k);
    lp.set_objective(t_col, 1.0);
    for (int i = 0; i < n; ++i) {
      lp_rows::add_norm_bound(lp, space, sites[i], weights(i), offsets(i), t_col,
                              d + 1 + i * aux);
    }
    lp_rows::add_affine(lp, space);
    const LpSolution sol = lp.minimize();
    if (sol.status == LpStatus::Infeasible) {
      throw Error(ErrorCode::Infeasible, "minimax LP has no feasible point");
    }
    MinimaxSolution out;
    out.method = SolveMethod::LP;
    out.iterations = sol.iterations;
    if (sol.status != LpStatus::Optimal) {
      out.point = AffineChart(space).project(centroid(sites));
      out.upper = weighted_max_value(space, sites, weights, offsets, out.point);
      out.lower = -std::numeric_limits<double>::infinity();
      out.converged = false;
      return out;
    }
    out.point = sol.x.head(d);
    if (space.constrained()) out.point = AffineChart(space).project(out.point);
    out.upper = weighted_max_value(space, sites, weights, offsets, out.point);
    out.lower = std::min(sol.x(t_col), out.upper);
    out.converged = true;
    return out;
  }

  const auto objective = [&](const Vec& x, Vec& g) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const double v = weights(i) * norm(space, x - sites[i]) - offsets(i);
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    g = weights(arg) * norm_subgradient(space, x - sites[arg]);
    return best;
  };
  const auto bound = [&](std::size_t i, double f0) {
    return std::max(0.0, (f0 + offsets(i)) / weights(i));
  };
  return ellipsoid_in_chart(space, sites, objective, bound, gap_tol);
}

double power_sum_value(const NormSpec& space, const std::vector<Vec>& sites, const Vec& weights,
                       double q, const Vec& x) {
  std::vector<double> t(sites.size());
  double top = 0.0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    t[i] = norm(space, x - sites[i]);
    top = std::max(top, t[i]);
  }
  if (top == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < sites.size(); ++i) s += weights(i) * std::pow(t[i] / top, q);
  return top * std::pow(s, 1.0 / q);
}

MinimaxSolution solve_power_sum(const NormSpec& space, const std::vector<Vec>& sites,
                                const Vec& weights, double q, double gap_tol) {
  check_sites(space, sites, weights);
  if (!(q >= 1.0)) throw Error(ErrorCode::InvalidArgument, "power-sum exponent must be >= 1");
  const auto objective = [&](const Vec& x, Vec& g) {
    const std::size_t n = sites.size();
    std::vector<double> t(n);
    std::vector<Vec> diff(n);
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diff[i] = x - sites[i];
      t[i] = norm(space, diff[i]);
      top = std::max(top, t[i]);
    }
    g = Vec::Zero(x.size());
    if (top == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += weights(i) * std::pow(t[i] / top, q);
    // d/dx of top * s^(1/q) with t_i scaled by top.
    const double outer = std::pow(s, 1.0 / q - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (t[i] == 0.0) continue;
      g += (outer * weights(i) * std::pow(t[i] / top, q - 1.0)) * norm_subgradient(space, diff[i]);
    }
    return top * std::pow(s, 1.0 / q);
  };
  const auto bound = [&](std::size_t i, double f0) { return f0 / std::pow(weights(i), 1.0 / q); };
  return ellipsoid_in_chart(space, sites, objective, bound, gap_tol);
}

}  // namespace chebcenter
