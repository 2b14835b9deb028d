#pragma once

#include <Eigen/Dense>
#include <optional>

#include "chebcenter/error.hpp"

namespace chebcenter {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class NormKind { L1, L2, LInf, WeightedSup };

// Affine system {x : A x = b}. A must have full row rank.
struct AffineConstraints {
  Mat A;
  Vec b;
};

// A norm on R^dim, optionally restricted to the affine subspace {x : Ax = b}.
// Immutable once constructed.
class NormSpec {
 public:
  NormSpec(NormKind kind, int dim, Vec scales = Vec(),
           std::optional<AffineConstraints> constraints = std::nullopt);

  static NormSpec l1(int dim) { return NormSpec(NormKind::L1, dim); }
  static NormSpec l2(int dim) { return NormSpec(NormKind::L2, dim); }
  static NormSpec linf(int dim) { return NormSpec(NormKind::LInf, dim); }
  static NormSpec weighted_sup(Vec scales) {
    const int dim = static_cast<int>(scales.size());
    return NormSpec(NormKind::WeightedSup, dim, std::move(scales));
  }

  NormSpec with_constraints(Mat A, Vec b) const;
  NormSpec unconstrained() const { return NormSpec(kind_, dim_, scales_); }

  int dim() const { return dim_; }
  NormKind kind() const { return kind_; }
  // Per-coordinate factors s_k; all ones unless kind is WeightedSup.
  const Vec& scales() const { return scales_; }
  bool constrained() const { return constraints_.has_value(); }
  const std::optional<AffineConstraints>& constraints() const { return constraints_; }
  // Number of affine constraint rows (0 when unconstrained).
  int codim() const { return constraints_ ? static_cast<int>(constraints_->A.rows()) : 0; }

  bool polyhedral() const { return kind_ != NormKind::L2; }

  friend bool operator==(const NormSpec& a, const NormSpec& b);

 private:
  NormKind kind_;
  int dim_;
  Vec scales_;
  std::optional<AffineConstraints> constraints_;
};

void check_dim(const NormSpec& space, const Vec& x, const char* what);

double norm(const NormSpec& space, const Vec& x);
double dual_norm(const NormSpec& space, const Vec& g);

// An element of the subdifferential of the norm at v. Returns zero at v = 0.
Vec norm_subgradient(const NormSpec& space, const Vec& v);

// Constant kappa with |v|_2 <= kappa * |v| for all v.
double euclidean_factor(const NormSpec& space);

// A linear functional acting by the standard inner product, with its dual
// norm cached against the space it was built for.
class Functional {
 public:
  Functional(const NormSpec& space, Vec coefficients);

  const Vec& coefficients() const { return coefficients_; }
  double dual_norm_value() const { return dual_norm_value_; }
  double operator()(const Vec& x) const { return coefficients_.dot(x); }

 private:
  Vec coefficients_;
  double dual_norm_value_;
};

// Unit vector z with <g, z> = -|g|_*. sign(0) is taken as +1.
Vec norming_direction(const NormSpec& space, const Functional& g);

bool in_subspace(const NormSpec& space, const Vec& x, double tol);

// Orthonormal parametrisation x = origin + basis * u of the feasible affine
// set of a space (the whole of R^dim when unconstrained).
class AffineChart {
 public:
  explicit AffineChart(const NormSpec& space);

  int dim() const { return static_cast<int>(basis_.cols()); }
  const Vec& origin() const { return origin_; }
  const Mat& basis() const { return basis_; }

  Vec to_ambient(const Vec& u) const { return origin_ + basis_ * u; }
  Vec to_local(const Vec& x) const { return basis_.transpose() * (x - origin_); }
  // Euclidean projection onto the affine set.
  Vec project(const Vec& x) const { return to_ambient(to_local(x)); }

 private:
  Vec origin_;
  Mat basis_;
};

}  // namespace chebcenter
