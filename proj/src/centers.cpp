#include "chebcenter/centers.hpp"
#include "chebcenter/format.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chebcenter/convex.hpp"

namespace chebcenter {

namespace {

constexpr double kMembershipTol = 1e-9;
// Ratio between the ellipsoid's gap target and the caller's tolerance.
constexpr double kInnerGapFactor = 1e-3;
constexpr std::uint64_t kMultiStartSeed = 0x5eedc0ffeeULL;

std::vector<double> distances(const PointSet& F, const Vec& x) {
  std::vector<double> t(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) t[i] = norm(F.space(), x - F.points()[i]);
  return t;
}

bool all_identical(const PointSet& F) {
  for (const Vec& p : F.points()) {
    if (p != F.points().front()) return false;
  }
  return true;
}

// Pairwise bound for the power-sum aggregator: (sum rho t^q)^(1/q) dominates
// max_i rho_i^(1/q) t_i, which is the max-weighted objective with weights
// rho^(1/q).
double power_sum_pairwise_bound(const PointSet& F, double q) {
  std::vector<double> w(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) w[i] = std::pow(F.weights()(i), 1.0 / q);
  return pairwise_lower_bound(PointSet(F.space(), F.points(), w));
}

CenterResult multistart(const PointSet& F, const Aggregator& agg, double tol) {
  const NormSpec& space = F.space();
  const AffineChart chart(space);
  const int d = space.dim();

  Vec lo = F.points().front(), hi = F.points().front();
  Vec mean = Vec::Zero(d);
  for (const Vec& p : F.points()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
    mean += p;
  }
  mean /= static_cast<double>(F.size());

  std::vector<Vec> starts;
  starts.push_back(mean);
  for (const Vec& p : F.points()) starts.push_back(p);
  std::mt19937_64 rng(kMultiStartSeed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < 2 * d + 1; ++s) {
    Vec x(d);
    for (int k = 0; k < d; ++k) x(k) = lo(k) + unit(rng) * (hi(k) - lo(k));
    starts.push_back(x);
  }

  const double extent = std::max((hi - lo).maxCoeff(), 1.0);
  const auto objective = [&](const Vec& u) { return eval_radius(F, chart.to_ambient(u), agg); };

  CenterResult best;
  best.method = SolveMethod::MultiStart;
  best.radius = std::numeric_limits<double>::infinity();
  for (const Vec& s : starts) {
    DirectSearchResult r = nelder_mead(objective, chart.to_local(s), 0.25 * extent);
    // One restart from the result shakes loose premature collapses.
    r = nelder_mead(objective, r.point, 0.05 * extent);
    best.iterations += r.evaluations;
    if (r.value < best.radius) {
      best.radius = r.value;
      best.center = chart.to_ambient(r.point);
    }
  }
  best.radius = eval_radius(F, best.center, agg);
  best.lower_bound = 0.0;
  best.gap = best.radius;
  best.certified = best.gap <= tol;
  return best;
}

}  // namespace

PointSet::PointSet(NormSpec space, std::vector<Vec> points, std::vector<double> weights)
    : space_(std::move(space)), points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::InvalidArgument, "point set is empty");
  for (const Vec& p : points_) {
    check_dim(space_, p, "point");
    if (!p.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite point coordinate");
    if (!in_subspace(space_, p, kMembershipTol)) {
      throw Error(ErrorCode::InvalidArgument, "point violates the subspace constraints");
    }
  }
  if (weights.empty()) weights.assign(points_.size(), 1.0);
  if (weights.size() != points_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weights length " + std::to_string(weights.size()) +
                                                  " differs from point count " +
                                                  std::to_string(points_.size()));
  }
  weights_ = Eigen::Map<const Vec>(weights.data(), static_cast<Eigen::Index>(weights.size()));
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidArgument, "weights must be positive and finite");
    }
  }
}

Aggregator Aggregator::power_sum(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::InvalidArgument, "power-sum exponent must be >= 1");
  }
  return Aggregator(Kind::PowerSum, q, {}, "power-sum");
}

Aggregator Aggregator::oracle(Callback f, std::string name) {
  if (!f) throw Error(ErrorCode::InvalidArgument, "oracle aggregator without callback");
  return Aggregator(Kind::Oracle, 1.0, std::move(f), std::move(name));
}

double Aggregator::apply(std::span<const double> t, const Vec& weights) const {
  switch (kind_) {
    case Kind::MaxWeighted: {
      double v = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) v = std::max(v, weights(i) * t[i]);
      return v;
    }
    case Kind::PowerSum: {
      double top = 0.0;
      for (double ti : t) top = std::max(top, ti);
      if (top == 0.0) return 0.0;
      double s = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) s += weights(i) * std::pow(t[i] / top, q_);
      return top * std::pow(s, 1.0 / q_);
    }
    case Kind::Oracle: {
      const double v = callback_(t);
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::OracleValue, "oracle '" + name_ + "' returned " + fmt12(v));
      }
      return v;
    }
  }
  return 0.0;
}

double eval_radius(const PointSet& F, const Vec& x, const Aggregator& agg) {
  check_dim(F.space(), x, "evaluation point");
  const std::vector<double> t = distances(F, x);
  return agg.apply(t, F.weights());
}

double pairwise_lower_bound(const PointSet& F) {
  double best = 0.0;
  const auto& a = F.points();
  const Vec& rho = F.weights();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      best = std::max(best, norm(F.space(), a[i] - a[j]) / (1.0 / rho(i) + 1.0 / rho(j)));
    }
  }
  return best;
}

CenterResult chebyshev_center(const PointSet& F, const Aggregator& agg, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const NormSpec& space = F.space();

  if (all_identical(F)) {
    CenterResult out;
    out.center = F.points().front();
    out.radius = eval_radius(F, out.center, agg);
    out.lower_bound = agg.kind() == Aggregator::Kind::Oracle ? 0.0 : out.radius;
    out.gap = out.radius - out.lower_bound;
    out.method = agg.kind() == Aggregator::Kind::Oracle ? SolveMethod::MultiStart
                                                         : SolveMethod::LP;
    out.certified = out.gap <= tol;
    return out;
  }

  if (agg.kind() == Aggregator::Kind::Oracle) return multistart(F, agg, tol);

  MinimaxSolution sol;
  double pairwise = 0.0;
  if (agg.kind() == Aggregator::Kind::MaxWeighted) {
    sol = solve_weighted_max(space, F.points(), F.weights(), Vec::Zero(F.size()),
                             kInnerGapFactor * tol);
    pairwise = pairwise_lower_bound(F);
  } else {
    sol = solve_power_sum(space, F.points(), F.weights(), agg.q(), kInnerGapFactor * tol);
    pairwise = power_sum_pairwise_bound(F, agg.q());
  }

  CenterResult out;
  out.center = sol.point;
  out.radius = eval_radius(F, out.center, agg);
  out.lower_bound = std::clamp(std::max(sol.lower, pairwise), 0.0, out.radius);
  out.gap = out.radius - out.lower_bound;
  out.iterations = sol.iterations;
  out.method = sol.method;
  out.certified = sol.converged && out.gap <= tol;
  return out;
}

}  // namespace chebcenter
