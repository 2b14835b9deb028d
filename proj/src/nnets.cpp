#include "chebcenter/nnets.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>

namespace chebcenter {

namespace {

constexpr int kHeuristicRounds = 100;

struct BlockCenter {
  Vec center;
  double radius = 0.0;
  bool certified = false;
};

class BlockSolver {
 public:
  BlockSolver(const PointSet& F, double tol)
      : F_(F), tol_(tol), memo_(std::size_t{1} << F.size()) {}

  const BlockCenter& solve(std::uint32_t mask) {
    std::optional<BlockCenter>& slot = memo_[mask];
    if (!slot) {
      std::vector<Vec> pts;
      for (std::size_t i = 0; i < F_.size(); ++i) {
        if (mask & (1u << i)) pts.push_back(F_.points()[i]);
      }
      const CenterResult c =
          chebyshev_center(PointSet(F_.space(), std::move(pts)), Aggregator::max_weighted(), tol_);
      slot = BlockCenter{c.center, c.radius, c.certified};
    }
    return *slot;
  }

 private:
  const PointSet& F_;
  double tol_;
  std::vector<std::optional<BlockCenter>> memo_;
};

class PartitionSearch {
 public:
  PartitionSearch(const PointSet& F, int n, double tol)
      : F_(F), n_(n), solver_(F, tol), dist_(F.size(), F.size()) {
    for (std::size_t i = 0; i < F.size(); ++i) {
      for (std::size_t j = 0; j < F.size(); ++j) {
        dist_(i, j) = norm(F.space(), F.points()[i] - F.points()[j]);
      }
    }
  }

  void run() {
    blocks_.assign(n_, 0u);
    descend(0, 0, 0.0);
  }

  const std::vector<std::uint32_t>& best_blocks() const { return best_blocks_; }
  BlockSolver& solver() { return solver_; }

 private:
  void descend(std::size_t point, int used, double partial_bound) {
    if (partial_bound >= best_) return;
    if (point == F_.size()) {
      leaf(used);
      return;
    }
    const int limit = std::min(used + 1, n_);
    for (int b = 0; b < limit; ++b) {
      double bound = partial_bound;
      for (std::size_t j = 0; j < point; ++j) {
        if (blocks_[b] & (1u << j)) bound = std::max(bound, 0.5 * dist_(point, j));
      }
      blocks_[b] |= 1u << point;
      descend(point + 1, std::max(used, b + 1), bound);
      blocks_[b] &= ~(1u << point);
    }
  }

  void leaf(int used) {
    double value = 0.0;
    for (int b = 0; b < used; ++b) {
      value = std::max(value, solver_.solve(blocks_[b]).radius);
      if (value >= best_) return;
    }
    best_ = value;
    best_blocks_.assign(blocks_.begin(), blocks_.begin() + used);
  }

  const PointSet& F_;
  int n_;
  BlockSolver solver_;
  Mat dist_;
  std::vector<std::uint32_t> blocks_;
  std::vector<std::uint32_t> best_blocks_;
  double best_ = std::numeric_limits<double>::infinity();
};

NNetResult finish(const PointSet& F, std::vector<Vec> nets, int n) {
  while (static_cast<int>(nets.size()) < n) nets.push_back(nets.front());
  NNetResult out;
  out.covering_radius = covering_radius(F, nets);
  out.assignment = nearest_assignment(F, nets);
  out.nets = std::move(nets);
  return out;
}

void check_n(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "net size must be at least 1");
}

}  // namespace

std::vector<std::size_t> nearest_assignment(const PointSet& F, std::span<const Vec> nets) {
  if (nets.empty()) throw Error(ErrorCode::InvalidArgument, "empty net");
  std::vector<std::size_t> out(F.size(), 0);
  for (std::size_t i = 0; i < F.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nets.size(); ++k) {
      const double d = norm(F.space(), F.points()[i] - nets[k]);
      if (d < best) {
        best = d;
        out[i] = k;
      }
    }
  }
  return out;
}

double covering_radius(const PointSet& F, std::span<const Vec> nets) {
  if (nets.empty()) throw Error(ErrorCode::InvalidArgument, "empty net");
  for (const Vec& y : nets) check_dim(F.space(), y, "net point");
  double worst = 0.0;
  for (const Vec& a : F.points()) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vec& y : nets) nearest = std::min(nearest, norm(F.space(), a - y));
    worst = std::max(worst, nearest);
  }
  return worst;
}

NNetResult best_nnet_exact(const PointSet& F, int n, double tol) {
  check_n(n);
  if (F.size() > kExactMaxPoints || n > kExactMaxNets) {
    throw Error(ErrorCode::BudgetExceeded,
                "exact n-net enumeration supports |F| <= " + std::to_string(kExactMaxPoints) +
                    " and n <= " + std::to_string(kExactMaxNets) + " (got |F| = " +
                    std::to_string(F.size()) + ", n = " + std::to_string(n) + ")");
  }
  PartitionSearch search(F, n, tol);
  search.run();

  std::vector<Vec> nets;
  bool certified = true;
  for (std::uint32_t mask : search.best_blocks()) {
    const BlockCenter& c = search.solver().solve(mask);
    nets.push_back(c.center);
    certified = certified && c.certified;
  }
  NNetResult out = finish(F, std::move(nets), n);
  out.optimal = certified;
  return out;
}

NNetResult best_nnet_heuristic(const PointSet& F, int n, double tol) {
  check_n(n);
  const std::size_t count = F.size();
  const auto& pts = F.points();

  // Farthest-first traversal from the first point.
  std::vector<Vec> nets{pts.front()};
  std::vector<double> gap(count);
  for (std::size_t i = 0; i < count; ++i) gap[i] = norm(F.space(), pts[i] - pts.front());
  while (static_cast<int>(nets.size()) < n) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < count; ++i) {
      if (gap[i] > gap[far]) far = i;
    }
    nets.push_back(pts[far]);
    for (std::size_t i = 0; i < count; ++i) {
      gap[i] = std::min(gap[i], norm(F.space(), pts[i] - pts[far]));
    }
  }

  std::vector<Vec> best_nets = nets;
  double best = covering_radius(F, nets);
  for (int round = 0; round < kHeuristicRounds; ++round) {
    const std::vector<std::size_t> assign = nearest_assignment(F, nets);
    for (std::size_t k = 0; k < nets.size(); ++k) {
      std::vector<Vec> block;
      for (std::size_t i = 0; i < count; ++i) {
        if (assign[i] == k) block.push_back(pts[i]);
      }
      if (block.empty()) continue;
      nets[k] = chebyshev_center(PointSet(F.space(), std::move(block)), Aggregator::max_weighted(),
                                 tol)
                    .center;
    }
    const double radius = covering_radius(F, nets);
    const double improvement = best - radius;
    if (radius < best) {
      best = radius;
      best_nets = nets;
    }
    if (improvement < tol) break;
  }
  NNetResult out = finish(F, std::move(best_nets), n);
  out.optimal = false;
  return out;
}

}  // namespace chebcenter
