#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "chebcenter/minimax.hpp"
#include "chebcenter/norm.hpp"

namespace chebcenter {

// Finite set {a_1..a_n} with positive weights rho_i (all 1 by default).
class PointSet {
 public:
  PointSet(NormSpec space, std::vector<Vec> points, std::vector<double> weights = {});

  const NormSpec& space() const { return space_; }
  const std::vector<Vec>& points() const { return points_; }
  const Vec& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }
  bool unit_weights() const { return (weights_.array() == 1.0).all(); }

  PointSet with_unit_weights() const { return PointSet(space_, points_); }

 private:
  NormSpec space_;
  std::vector<Vec> points_;
  Vec weights_;
};

// f : R^n_{>=0} -> R_{>=0}, applied to the distance vector (|x-a_1|, ...).
class Aggregator {
 public:
  enum class Kind { MaxWeighted, PowerSum, Oracle };
  // The callback receives the distances only; it is promised (not checked)
  // to be continuous, coordinatewise nondecreasing and coercive.
  using Callback = std::function<double(std::span<const double> distances)>;

  static Aggregator max_weighted() { return Aggregator(Kind::MaxWeighted, 1.0, {}, "max-weighted"); }
  static Aggregator power_sum(double q);
  static Aggregator oracle(Callback f, std::string name);

  Kind kind() const { return kind_; }
  double q() const { return q_; }
  const std::string& name() const { return name_; }

  // Aggregates distances using the point weights for the built-in kinds.
  double apply(std::span<const double> distances, const Vec& weights) const;

 private:
  Aggregator(Kind kind, double q, Callback f, std::string name)
      : kind_(kind), q_(q), callback_(std::move(f)), name_(std::move(name)) {}

  Kind kind_;
  double q_;
  Callback callback_;
  std::string name_;
};

struct CenterResult {
  Vec center;
  double radius = 0.0;
  double lower_bound = 0.0;
  double gap = 0.0;
  int iterations = 0;
  SolveMethod method = SolveMethod::LP;
  bool certified = false;
};

// r_f(x, F). x is evaluated as given, constraints are not imposed here.
double eval_radius(const PointSet& F, const Vec& x, const Aggregator& agg);

// max_{i<j} |a_i - a_j| / (1/rho_i + 1/rho_j); 0 for a single point.
double pairwise_lower_bound(const PointSet& F);

CenterResult chebyshev_center(const PointSet& F, const Aggregator& agg, double tol = 1e-9);

}  // namespace chebcenter
