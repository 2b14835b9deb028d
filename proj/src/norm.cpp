#include "chebcenter/norm.hpp"

#include <cmath>
#include <string>

namespace chebcenter {

namespace {

constexpr double kRankTolerance = 1e-10;

void validate_constraints(const AffineConstraints& c, int dim) {
  if (c.A.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "constraint matrix has " + std::to_string(c.A.cols()) + " columns, space has dim " +
                    std::to_string(dim));
  }
  if (c.A.rows() != c.b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "constraint rhs length differs from row count");
  }
  if (c.A.rows() == 0) throw Error(ErrorCode::InvalidArgument, "empty constraint system");
  if (c.A.rows() > dim) {
    throw Error(ErrorCode::InvalidArgument, "more constraint rows than coordinates");
  }
  if (!c.A.allFinite() || !c.b.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "non-finite constraint data");
  }
  Eigen::JacobiSVD<Mat> svd(c.A);
  const Vec& sv = svd.singularValues();
  const double largest = sv.size() > 0 ? sv(0) : 0.0;
  if (largest <= 0.0 || sv(sv.size() - 1) <= kRankTolerance * largest) {
    throw Error(ErrorCode::InvalidArgument, "constraint matrix is not of full row rank");
  }
}

double sign_or_plus(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

NormSpec::NormSpec(NormKind kind, int dim, Vec scales, std::optional<AffineConstraints> constraints)
    : kind_(kind), dim_(dim), scales_(std::move(scales)), constraints_(std::move(constraints)) {
  if (dim_ < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  if (kind_ == NormKind::WeightedSup) {
    if (scales_.size() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "weighted-sup scale vector length differs from dim");
    }
    for (Eigen::Index k = 0; k < scales_.size(); ++k) {
      if (!(scales_(k) > 0.0) || !std::isfinite(scales_(k))) {
        throw Error(ErrorCode::InvalidArgument, "weighted-sup scale factors must be positive");
      }
    }
  } else {
    if (scales_.size() != 0 && scales_.size() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "scale vector length differs from dim");
    }
    scales_ = Vec::Ones(dim_);
  }
  if (constraints_) validate_constraints(*constraints_, dim_);
}

NormSpec NormSpec::with_constraints(Mat A, Vec b) const {
  return NormSpec(kind_, dim_, scales_, AffineConstraints{std::move(A), std::move(b)});
}

bool operator==(const NormSpec& a, const NormSpec& b) {
  if (a.kind_ != b.kind_ || a.dim_ != b.dim_ || a.scales_ != b.scales_) return false;
  if (a.constrained() != b.constrained()) return false;
  if (!a.constrained()) return true;
  const auto& ca = *a.constraints_;
  const auto& cb = *b.constraints_;
  return ca.A.rows() == cb.A.rows() && ca.A == cb.A && ca.b == cb.b;
}

void check_dim(const NormSpec& space, const Vec& x, const char* what) {
  if (x.size() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has length " +
                                                  std::to_string(x.size()) + ", expected " +
                                                  std::to_string(space.dim()));
  }
}

double norm(const NormSpec& space, const Vec& x) {
  check_dim(space, x, "vector");
  switch (space.kind()) {
    case NormKind::L1: return x.lpNorm<1>();
    case NormKind::L2: return x.norm();
    case NormKind::LInf: return x.lpNorm<Eigen::Infinity>();
    case NormKind::WeightedSup: return x.cwiseAbs().cwiseProduct(space.scales()).maxCoeff();
  }
  return 0.0;
}

double dual_norm(const NormSpec& space, const Vec& g) {
  check_dim(space, g, "functional");
  switch (space.kind()) {
    case NormKind::L1: return g.lpNorm<Eigen::Infinity>();
    case NormKind::L2: return g.norm();
    case NormKind::LInf: return g.lpNorm<1>();
    case NormKind::WeightedSup: return g.cwiseAbs().cwiseQuotient(space.scales()).sum();
  }
  return 0.0;
}

Vec norm_subgradient(const NormSpec& space, const Vec& v) {
  check_dim(space, v, "vector");
  Vec s = Vec::Zero(v.size());
  switch (space.kind()) {
    case NormKind::L1:
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (v(k) > 0.0) s(k) = 1.0;
        else if (v(k) < 0.0) s(k) = -1.0;
      }
      break;
    case NormKind::L2: {
      const double n = v.norm();
      if (n > 0.0) s = v / n;
      break;
    }
    case NormKind::LInf:
    case NormKind::WeightedSup: {
      Eigen::Index k = 0;
      const double top = v.cwiseAbs().cwiseProduct(space.scales()).maxCoeff(&k);
      if (top > 0.0) s(k) = space.scales()(k) * (v(k) < 0.0 ? -1.0 : 1.0);
      break;
    }
  }
  return s;
}

double euclidean_factor(const NormSpec& space) {
  switch (space.kind()) {
    case NormKind::L1:
    case NormKind::L2: return 1.0;
    case NormKind::LInf: return std::sqrt(static_cast<double>(space.dim()));
    case NormKind::WeightedSup:
      return std::sqrt(static_cast<double>(space.dim())) / space.scales().minCoeff();
  }
  return 1.0;
}

Functional::Functional(const NormSpec& space, Vec coefficients)
    : coefficients_(std::move(coefficients)), dual_norm_value_(dual_norm(space, coefficients_)) {}

Vec norming_direction(const NormSpec& space, const Functional& g) {
  const Vec& c = g.coefficients();
  check_dim(space, c, "functional");
  if (g.dual_norm_value() == 0.0) {
    throw Error(ErrorCode::ZeroFunctional, "norming direction of the zero functional");
  }
  Vec z = Vec::Zero(c.size());
  switch (space.kind()) {
    case NormKind::L1: {
      Eigen::Index best = 0;
      for (Eigen::Index k = 1; k < c.size(); ++k) {
        if (std::abs(c(k)) > std::abs(c(best))) best = k;
      }
      z(best) = -sign_or_plus(c(best));
      break;
    }
    case NormKind::L2: z = -c / c.norm(); break;
    case NormKind::LInf:
      for (Eigen::Index k = 0; k < c.size(); ++k) z(k) = -sign_or_plus(c(k));
      break;
    case NormKind::WeightedSup:
      for (Eigen::Index k = 0; k < c.size(); ++k) z(k) = -sign_or_plus(c(k)) / space.scales()(k);
      break;
  }
  return z;
}

bool in_subspace(const NormSpec& space, const Vec& x, double tol) {
  check_dim(space, x, "point");
  if (!space.constrained()) return true;
  const auto& c = *space.constraints();
  return (c.A * x - c.b).lpNorm<Eigen::Infinity>() <= tol;
}

AffineChart::AffineChart(const NormSpec& space) {
  const int d = space.dim();
  if (!space.constrained()) {
    origin_ = Vec::Zero(d);
    basis_ = Mat::Identity(d, d);
    return;
  }
  const auto& c = *space.constraints();
  // Full SVD of A: the trailing right singular vectors span null(A).
  Eigen::JacobiSVD<Mat> svd(c.A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int m = static_cast<int>(c.A.rows());
  origin_ = svd.solve(c.b);
  basis_ = svd.matrixV().rightCols(d - m);
}

}  // namespace chebcenter
