#include "chebcenter/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chebcenter/format.hpp"

namespace chebcenter {

namespace {

constexpr double kSeedTol = 1e-9;

Vec zero_pad(const Vec& x, int d) {
  Vec out = Vec::Zero(d);
  out.head(x.size()) = x;
  return out;
}

}  // namespace

const char* to_string(TruncationVariant v) {
  return v == TruncationVariant::XSpace ? "x-space" : "y-space";
}

NormSpec build_truncation(TruncationVariant variant, int d) {
  if (d < 2 || d % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "truncation dimension must be even and >= 2, got " + std::to_string(d));
  }
  const int half = d / 2;
  const int rows = variant == TruncationVariant::XSpace ? 1 : 2;
  Mat A = Mat::Zero(rows, d);
  for (int n = 1; n <= half; ++n) {
    const double c = std::ldexp(1.0, -n);
    const int odd = 2 * n - 2;  // zero-based slot of x_{2n-1}
    const int even = 2 * n - 1;  // zero-based slot of x_{2n}
    if (variant == TruncationVariant::XSpace) {
      A(0, odd) = -c;
      A(0, even) = c;
    } else {
      A(0, odd) = c;
      A(1, even) = c;
    }
  }
  return NormSpec::linf(d).with_constraints(std::move(A), Vec::Zero(rows));
}

SweepResult radius_sweep(TruncationVariant variant, std::span<const Vec> seed,
                         std::span<const int> dims, double tol) {
  if (seed.empty()) throw Error(ErrorCode::InvalidArgument, "empty seed");
  if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "no dimensions to sweep");
  const Eigen::Index base = seed.front().size();
  for (const Vec& p : seed) {
    if (p.size() != base) throw Error(ErrorCode::DimensionMismatch, "ragged seed points");
  }
  std::vector<int> sorted(dims.begin(), dims.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  SweepResult out;
  out.variant = variant;
  for (int d : sorted) {
    if (d < base) {
      throw Error(ErrorCode::DimensionMismatch, "sweep dimension " + std::to_string(d) +
                                                    " is below the seed dimension " +
                                                    std::to_string(base));
    }
    const NormSpec space = build_truncation(variant, d);
    std::vector<Vec> points;
    for (const Vec& p : seed) {
      Vec padded = zero_pad(p, d);
      if (!in_subspace(space, padded, kSeedTol)) {
        throw Error(ErrorCode::InvalidArgument,
                    "seed point violates the " + std::string(to_string(variant)) +
                        " constraints at d = " + std::to_string(d));
      }
      points.push_back(std::move(padded));
    }
    const CenterResult c = chebyshev_center(PointSet(space, std::move(points)),
                                            Aggregator::max_weighted(), tol);
    out.records.push_back({d, c.radius, c.center, c.certified});
  }
  for (std::size_t i = 1; i < out.records.size(); ++i) {
    if (out.records[i].radius > out.records[i - 1].radius + kSweepMonotoneTol) {
      out.non_increasing = false;
    }
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out = csv_row({"d", "radius", "certified"});
  for (const SweepRecord& r : sweep.records) {
    out += csv_row({std::to_string(r.d), fmt12(r.radius), r.certified ? "true" : "false"});
  }
  return out;
}

std::string sweep_svg(const SweepResult& sweep) {
  constexpr double W = 480, H = 320, M = 48;
  double dmin = sweep.records.front().d, dmax = sweep.records.back().d;
  double rmax = 0.0;
  for (const SweepRecord& r : sweep.records) rmax = std::max(rmax, r.radius);
  if (dmax == dmin) dmax = dmin + 1;
  if (rmax <= 0.0) rmax = 1.0;
  const auto px = [&](double d) { return M + (d - dmin) / (dmax - dmin) * (W - 2 * M); };
  const auto py = [&](double r) { return H - M - r / rmax * (H - 2 * M); };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
    << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
    << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
    << "\" stroke=\"black\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" "
    << "font-size=\"12\">d</text>\n"
    << "<text x=\"14\" y=\"" << H / 2 << "\" font-size=\"12\">radius</text>\n"
    << "<text x=\"" << M << "\" y=\"" << M - 10 << "\" font-size=\"12\">" << to_string(sweep.variant)
    << " (max " << fmt12(rmax) << ")</text>\n"
    << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (const SweepRecord& r : sweep.records) s << px(r.d) << ',' << py(r.radius) << ' ';
  s << "\"/>\n";
  for (const SweepRecord& r : sweep.records) {
    s << "<circle cx=\"" << px(r.d) << "\" cy=\"" << py(r.radius) << "\" r=\"3\" fill=\""
      << (r.certified ? "steelblue" : "crimson") << "\"/>\n"
      << "<text x=\"" << px(r.d) << "\" y=\"" << H - M + 16 << "\" text-anchor=\"middle\" "
      << "font-size=\"10\">" << r.d << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace chebcenter
