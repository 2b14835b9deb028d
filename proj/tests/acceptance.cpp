// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Oracles live in test_support.hpp and never call the solvers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "chebcenter/ball_feasibility.hpp"
#include "chebcenter/centers.hpp"
#include "chebcenter/equalizer.hpp"
#include "chebcenter/experiments.hpp"
#include "chebcenter/nnets.hpp"
#include "chebcenter/report.hpp"
#include "test_support.hpp"

using namespace chebcenter;
using chebtest::v;

namespace {

// Pinned tolerances.
constexpr double kSolverTol = 1e-9;
constexpr double kOracleTol = 1e-6;
constexpr double kDualityTol = 1e-9;
constexpr double kContainmentTol = 1e-9;
constexpr double kDepthTol = 1e-6;
constexpr double kDisplacementTol = 1e-9;
constexpr double kNetTol = 1e-6;
constexpr double kNetCenterTol = 2e-6;
constexpr double kFermatTol = 1e-4;
constexpr double kProbeSlack = 1e-9;
constexpr double kSweepTol = 2e-9;
constexpr double kFeasibilityTol = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct CenterCase {
  NormSpec space;
  std::vector<Vec> points;
  std::vector<double> weights;
};

NormSpec norm_of(int which, int d) {
  switch (which) {
    case 0: return NormSpec::l1(d);
    case 1: return NormSpec::l2(d);
    default: return NormSpec::linf(d);
  }
}

// Dimensions 1..4, 2..6 points, L1/L2/LInf, unit or random weights. Sizes are
// chosen so an exact independent oracle exists: sup norm in any dimension,
// L1 and L2 up to the plane, and two-point sets everywhere.
std::vector<CenterCase> center_corpus() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::vector<CenterCase> out;
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + t % 4;
    const int which = (t / 4) % 3;
    const bool oracle_any_n = which == 2 || d <= 2;
    const int n = oracle_any_n ? 2 + (t / 12) % 5 : 2;
    CenterCase c{norm_of(which, d), {}, {}};
    for (int i = 0; i < n; ++i) {
      c.points.push_back(chebtest::random_vec(rng, d, -5, 5));
      c.weights.push_back((t / 2) % 2 == 0 ? 1.0 : weight(rng));
    }
    out.push_back(std::move(c));
  }
  return out;
}

double exact_radius(const CenterCase& c) {
  if (c.points.size() == 2) {
    return norm(c.space, c.points[0] - c.points[1]) / (1 / c.weights[0] + 1 / c.weights[1]);
  }
  if (const auto r = chebtest::polyhedral_radius(c.space, c.points, c.weights)) return *r;
  return chebtest::l2_weighted_radius(c.points, c.weights);
}

Outcome criterion1(const std::vector<CenterCase>& corpus) {
  Outcome o;
  double worst = 0.0;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const CenterCase& c = corpus[t];
    const CenterResult r = chebyshev_center(PointSet(c.space, c.points, c.weights),
                                            Aggregator::max_weighted(), kSolverTol);
    const double oracle = exact_radius(c);
    worst = std::max(worst, std::abs(r.radius - oracle));
    if (std::abs(r.radius - oracle) > kOracleTol) {
      o.fail("instance " + std::to_string(t) + ": " + num(r.radius) + " vs oracle " + num(oracle));
    }
    // Dense grid with local refinement in the line and the plane: an attained
    // value, so the solver may not exceed it.
    if (c.space.dim() <= 2) {
      const double grid = chebtest::zoom_grid_min(
          [&](const Vec& x) { return chebtest::weighted_max(c.space, c.points, c.weights, x); },
          Vec::Zero(c.space.dim()), 6, 12, 30);
      if (r.radius > grid + kOracleTol) o.fail("instance " + std::to_string(t) + " above grid value");
    }
  }
  if (o.pass) o.detail = "200 instances, max |radius - oracle| = " + num(worst);
  return o;
}

Outcome criterion2(const std::vector<CenterCase>& corpus) {
  Outcome o;
  int passed = 0;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const CenterCase& c = corpus[t];
    if (duality_check(PointSet(c.space, c.points), kDualityTol)) ++passed;
    else o.fail("instance " + std::to_string(t) + " failed");
  }
  if (o.pass) o.detail = std::to_string(passed) + "/200 instances";
  return o;
}

// Random centers and radii, then a common radius shift puts the depth at a
// chosen value in [1e-3, 0.5].
std::vector<std::pair<NormSpec, std::vector<Ball>>> equalizer_corpus() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> rad(0.5, 1.5);
  std::uniform_real_distribution<double> gap(1e-3, 0.5);
  std::vector<std::pair<NormSpec, std::vector<Ball>>> out;
  int t = 0;
  while (out.size() < 200) {
    const int d = 1 + t % 4;
    const int n = 2 + (t / 4) % 4;
    const NormSpec space = norm_of((t / 16) % 3, d);
    ++t;
    std::vector<Ball> balls;
    for (int i = 0; i < n; ++i) balls.push_back({chebtest::random_vec(rng, d, -3, 3), rad(rng)});
    const FeasibilityCertificate c = intersect(space, balls);
    const double shift = c.depth - gap(rng);
    bool ok = true;
    for (Ball& b : balls) {
      b.radius += shift;
      ok = ok && b.radius > 0.05;
    }
    if (!ok) continue;
    out.push_back({space, std::move(balls)});
  }
  return out;
}

Outcome criterion3() {
  Outcome o;
  int runs = 0;
  int case2 = 0;
  for (const auto& [space, balls] : equalizer_corpus()) {
    double rmax = 0.0;
    for (const Ball& b : balls) rmax = std::max(rmax, b.radius);
    for (double r : {rmax + 1e-3, rmax + 1.0, 10 * rmax + 10}) {
      ++runs;
      const std::string tag = "run " + std::to_string(runs);
      try {
        const EqualizeResult res = equalize(space, balls, r);
        if (res.verification.status != FeasibilityStatus::Empty) o.fail(tag + ": verification not Empty");
        for (std::size_t i = 0; i < balls.size(); ++i) {
          const EqualizeStep& s = res.steps[i];
          if (norm(space, s.new_center - balls[i].center) > r - balls[i].radius + kContainmentTol) {
            o.fail(tag + ": containment violated");
          }
          if (s.kind == StepCase::Separated) {
            ++case2;
            const double sup = step_functional_sup(s, balls[i], r);
            if (!(*s.epsilon > 0) || sup > 1 - *s.epsilon + kContainmentTol || !(1 - *s.epsilon < 1)) {
              o.fail(tag + ": inequality chain fails");
            }
          }
        }
      } catch (const Error& e) {
        o.fail(tag + ": " + e.what());
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(runs) + " runs, " + std::to_string(case2) +
               " separated steps, 0 invariant violations";
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const NormSpec l2 = NormSpec::l2(2);
  const std::vector<Ball> balls{
      {v({0, 0}), 1.05}, {v({2, 0}), 1.05}, {v({1, std::sqrt(3.0)}), 1.05}};
  const FeasibilityCertificate c = intersect(l2, balls);
  const double expected = 2 / std::sqrt(3.0) - 1.05;
  if (c.status != FeasibilityStatus::Empty) o.fail("status not Empty");
  if (std::abs(c.depth - expected) > kDepthTol) o.fail("depth " + num(c.depth));
  const EqualizeResult res = equalize(l2, balls, 1.2);
  int moved = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (res.steps[i].kind != StepCase::Separated) continue;
    ++moved;
    const double disp = norm(l2, res.steps[i].new_center - balls[i].center);
    worst = std::max(worst, std::abs(disp - 0.15));
  }
  if (worst > kDisplacementTol) o.fail("displacement off by " + num(worst));
  if (res.verification.status != FeasibilityStatus::Empty) o.fail("equalized system not Empty");
  if (moved == 0) o.fail("no center moved");
  if (o.pass) {
    o.detail = "depth " + num(c.depth) + ", " + std::to_string(moved) +
               " separated steps with displacement 0.15 (max err " + num(worst) + ")";
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const PointSet square(NormSpec::l2(2), {v({0, 0}), v({1, 0}), v({0, 1}), v({1, 1})});
  const double r2 = best_nnet_exact(square, 2, kSolverTol).covering_radius;
  if (std::abs(r2 - 0.5) > kNetTol) o.fail("square corners gave " + num(r2));
  std::mt19937_64 rng(55);
  for (int t = 0; t < 50; ++t) {
    const int d = 1 + t % 3;
    const NormSpec space = norm_of(t % 3, d);
    std::vector<Vec> pts;
    for (int i = 0; i < 3 + t % 8; ++i) pts.push_back(chebtest::random_vec(rng, d, -4, 4));
    const PointSet F(space, pts);
    const std::string tag = "instance " + std::to_string(t);
    double previous = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 3; ++n) {
      const double exact = best_nnet_exact(F, n, kSolverTol).covering_radius;
      const double heur = best_nnet_heuristic(F, n, kSolverTol).covering_radius;
      if (heur < exact - kNetTol || heur > 2 * exact + kNetTol) o.fail(tag + ": heuristic out of range");
      if (exact > previous + kNetTol) o.fail(tag + ": R_n increased");
      previous = exact;
      if (n == 1) {
        const double rad = chebyshev_center(F, Aggregator::max_weighted(), kSolverTol).radius;
        if (std::abs(exact - rad) > kNetCenterTol) o.fail(tag + ": R_1 differs from the radius");
      }
    }
  }
  if (o.pass) o.detail = "square corners R_2 = " + num(r2) + "; 50 random instances, n = 1..3";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Aggregator sum1 = Aggregator::power_sum(1);
  const PointSet tri(NormSpec::l2(2), {v({0, 0}), v({1, 0}), v({0.5, std::sqrt(3.0) / 2})});
  const double solved = chebyshev_center(tri, sum1, kSolverTol).radius;
  // Multistart zoom-grid oracle for the Fermat point.
  double oracle = std::numeric_limits<double>::infinity();
  for (const Vec& start : {v({0, 0}), v({1, 0}), v({0.5, 0.8}), v({0.5, 0.3})}) {
    oracle = std::min(oracle, chebtest::zoom_grid_min(
                                  [&](const Vec& x) { return eval_radius(tri, x, sum1); }, start, 1.5,
                                  20, 40));
  }
  if (std::abs(solved - oracle) > kFermatTol) o.fail("triangle " + num(solved) + " vs " + num(oracle));

  std::mt19937_64 rng(66);
  std::uniform_real_distribution<double> qdist(1.0, 4.0);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::normal_distribution<double> jitter(0.0, 1.0);
  double tightest = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 100; ++t) {
    const int d = 1 + t % 3;
    const NormSpec space = norm_of(t % 3, d);
    std::vector<Vec> pts;
    std::vector<double> w;
    for (int i = 0; i < 2 + t % 5; ++i) {
      pts.push_back(chebtest::random_vec(rng, d, -3, 3));
      w.push_back(weight(rng));
    }
    const PointSet F(space, pts, w);
    const Aggregator agg = Aggregator::power_sum(t % 4 == 0 ? 1.0 : qdist(rng));
    const CenterResult r = chebyshev_center(F, agg, kSolverTol);
    const double reported = eval_radius(F, r.center, agg);
    for (int k = 0; k < 1000; ++k) {
      // Half the probes are global, half hug the reported point.
      Vec probe(d);
      const double scale = k % 2 == 0 ? 4.0 : std::pow(10.0, -1 - k % 7);
      for (int j = 0; j < d; ++j) probe(j) = (k % 2 == 0 ? 0.0 : r.center(j)) + scale * jitter(rng);
      const double value = eval_radius(F, probe, agg);
      tightest = std::min(tightest, value - reported);
      if (reported > value + kProbeSlack) {
        o.fail("instance " + std::to_string(t) + ": probe beats the optimum by " + num(reported - value));
      }
    }
  }
  if (o.pass) {
    o.detail = "triangle " + num(solved) + " (oracle " + num(oracle) +
               "); 100 x 1000 probes, min(probe - reported) = " + num(tightest);
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  int sequences = 0;
  for (int t = 0; t < 20; ++t) {
    for (TruncationVariant variant : {TruncationVariant::XSpace, TruncationVariant::YSpace}) {
      // X seeds live on the 2-dimensional slice (the diagonal); the Y slice
      // of dimension 2 is {0}, so Y seeds start on the 4-dimensional slice.
      const int base = variant == TruncationVariant::XSpace ? 2 : 4;
      const AffineChart chart(build_truncation(variant, base));
      std::vector<Vec> seed;
      for (int i = 0; i < 2 + t % 4; ++i) seed.push_back(chart.project(chebtest::random_vec(rng, base, -3, 3)));
      std::vector<int> dims;
      for (int d = base; d <= 16; d += 2) dims.push_back(d);
      const SweepResult s = radius_sweep(variant, seed, dims, kSolverTol);
      ++sequences;
      const std::string tag = std::string(to_string(variant)) + " seed " + std::to_string(t);
      if (!s.non_increasing) o.fail(tag + ": verdict not non-increasing");
      for (std::size_t k = 0; k < s.records.size(); ++k) {
        if (k > 0 && s.records[k].radius > s.records[k - 1].radius + kSweepTol) o.fail(tag + ": radius rose");
        if (!in_subspace(build_truncation(variant, s.records[k].d), s.records[k].center, kFeasibilityTol)) {
          o.fail(tag + ": center off the slice");
        }
      }
    }
  }
  // The zero seed covers the Y slice of dimension 2.
  const std::vector<int> all{2, 4, 6, 8, 10, 12, 14, 16};
  const SweepResult zero = radius_sweep(TruncationVariant::YSpace, std::vector<Vec>{v({0, 0})}, all);
  if (!zero.non_increasing || zero.records.front().radius != 0.0) o.fail("zero seed sweep");
  if (o.pass) o.detail = std::to_string(sequences) + " sequences up to d = 16";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::vector<std::pair<std::string, Instance>> golden;
  for (const std::string& name : demo_names()) golden.push_back({"demo " + name, demo_instance(name)});
  for (const auto& entry : std::filesystem::directory_iterator(CHEBCENTER_INSTANCE_DIR)) {
    if (entry.path().extension() == ".json") {
      golden.push_back({entry.path().filename().string(), parse_instance(entry.path())});
    }
  }
  for (const auto& [label, inst] : golden) {
    const RunOptions opt{".", std::nullopt, true};
    const RunArtifacts a = execute(inst, opt);
    const RunArtifacts b = execute(inst, opt);
    if (a.record != b.record || a.table != b.table || a.svg != b.svg) o.fail(label + " differs");
  }
  if (o.pass) o.detail = std::to_string(golden.size()) + " golden runs repeated bit for bit";
  return o;
}

}  // namespace

int main() {
  const std::vector<CenterCase> corpus = center_corpus();
  struct Entry {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries{
      {1, "center solver matches independent oracles", [&] { return criterion1(corpus); }},
      {2, "duality check on the center corpus", [&] { return criterion2(corpus); }},
      {3, "equalizer on 200 empty systems x 3 radii", criterion3},
      {4, "equilateral disks depth and displacement", criterion4},
      {5, "n-nets exact, heuristic and monotone", criterion5},
      {6, "power-sum centers beat every probe", criterion6},
      {7, "truncation sweeps monotone and feasible", criterion7},
      {8, "golden runs are deterministic", criterion8},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s [%s] (%.1fs)\n", o.pass ? "PASS" : "FAIL", e.id, e.title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
