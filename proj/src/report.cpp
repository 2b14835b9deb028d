#include "chebcenter/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "chebcenter/ball_feasibility.hpp"
#include "chebcenter/equalizer.hpp"
#include "chebcenter/experiments.hpp"
#include "chebcenter/format.hpp"
#include "chebcenter/nnets.hpp"
#include "json.hpp"

namespace chebcenter {

namespace {

using ojson = nlohmann::ordered_json;

ojson num(double v) { return round12(v); }

ojson vec(const Vec& v) {
  ojson a = ojson::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(num(v(k)));
  return a;
}

std::string vec_text(const Vec& v) {
  std::string out;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) out += ' ';
    out += fmt12(v(k));
  }
  return out;
}

ojson tolerances_json(const Tolerances& t) {
  return {{"tol", num(t.tol)}, {"feas_tol", num(t.feas_tol)}, {"margin_tol", num(t.margin_tol)}};
}

ojson certificate_json(const FeasibilityCertificate& c) {
  ojson j;
  j["status"] = to_string(c.status);
  j["depth"] = num(c.depth);
  j["depth_lower_bound"] = num(c.depth_lower_bound);
  if (c.witness) j["witness"] = vec(*c.witness);
  if (c.separator) {
    j["separator"] = {{"coefficients", vec(c.separator->coefficients())},
                      {"dual_norm", num(c.separator->dual_norm_value())}};
  }
  return j;
}

std::vector<Ball> balls_of(const Instance& inst) {
  std::vector<Ball> out;
  for (const BallSpec& b : inst.balls) {
    out.push_back({Eigen::Map<const Vec>(b.center.data(), static_cast<Eigen::Index>(b.center.size())),
                   b.radius});
  }
  return out;
}

// Minimal 2-D SVG canvas in world coordinates (y up).
class Canvas {
 public:
  void include(const Vec& p, double pad = 0.0) {
    lo_x_ = std::min(lo_x_, p(0) - pad);
    hi_x_ = std::max(hi_x_, p(0) + pad);
    lo_y_ = std::min(lo_y_, p(1) - pad);
    hi_y_ = std::max(hi_y_, p(1) + pad);
  }

  void ball(const NormSpec& space, const Vec& c, double r, const std::string& style) {
    shapes_.push_back([=, this](std::ostream& os) {
      const double hx = r / space.scales()(0), hy = r / space.scales()(1);
      switch (space.kind()) {
        case NormKind::L2:
          os << "<circle cx=\"" << X(c(0)) << "\" cy=\"" << Y(c(1)) << "\" r=\"" << r * scale_
             << "\" " << style << "/>\n";
          break;
        case NormKind::LInf:
        case NormKind::WeightedSup:
          os << "<rect x=\"" << X(c(0) - hx) << "\" y=\"" << Y(c(1) + hy) << "\" width=\""
             << 2 * hx * scale_ << "\" height=\"" << 2 * hy * scale_ << "\" " << style << "/>\n";
          break;
        case NormKind::L1:
          os << "<polygon points=\"" << X(c(0) + r) << ',' << Y(c(1)) << ' ' << X(c(0)) << ','
             << Y(c(1) + r) << ' ' << X(c(0) - r) << ',' << Y(c(1)) << ' ' << X(c(0)) << ','
             << Y(c(1) - r) << "\" " << style << "/>\n";
          break;
      }
    });
  }

  void dot(const Vec& p, const std::string& fill, double radius = 3.0) {
    shapes_.push_back([=, this](std::ostream& os) {
      os << "<circle cx=\"" << X(p(0)) << "\" cy=\"" << Y(p(1)) << "\" r=\"" << radius
         << "\" fill=\"" << fill << "\"/>\n";
    });
  }

  void line(const Vec& a, const Vec& b, const std::string& style) {
    shapes_.push_back([=, this](std::ostream& os) {
      os << "<line x1=\"" << X(a(0)) << "\" y1=\"" << Y(a(1)) << "\" x2=\"" << X(b(0))
         << "\" y2=\"" << Y(b(1)) << "\" " << style << "/>\n";
    });
  }

  std::string render(const std::string& title) {
    constexpr double kSize = 480.0, kMargin = 24.0;
    const double w = std::max(hi_x_ - lo_x_, 1e-9), h = std::max(hi_y_ - lo_y_, 1e-9);
    scale_ = (kSize - 2 * kMargin) / std::max(w, h);
    off_x_ = kMargin - lo_x_ * scale_;
    off_y_ = kMargin + hi_y_ * scale_;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize
       << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"8\" y=\"16\" font-size=\"12\">" << title << "</text>\n";
    for (const auto& s : shapes_) s(os);
    os << "</svg>\n";
    return os.str();
  }

 private:
  double X(double x) const { return off_x_ + x * scale_; }
  double Y(double y) const { return off_y_ - y * scale_; }

  double lo_x_ = INFINITY, hi_x_ = -INFINITY, lo_y_ = INFINITY, hi_y_ = -INFINITY;
  double scale_ = 1.0, off_x_ = 0.0, off_y_ = 0.0;
  std::vector<std::function<void(std::ostream&)>> shapes_;
};

// Radius of the Euclidean disk containing B[0, r] in this norm.
double draw_pad(const NormSpec& space, double r) { return euclidean_factor(space) * r; }

constexpr const char* kBallStyle = "fill=\"steelblue\" fill-opacity=\"0.12\" stroke=\"steelblue\"";
constexpr const char* kNewBallStyle =
    "fill=\"none\" stroke=\"darkorange\" stroke-dasharray=\"4 3\"";
constexpr const char* kLinkStyle = "stroke=\"gray\" stroke-width=\"1\"";

RunArtifacts run_center(const Instance& inst, const Tolerances& tol, bool svg) {
  const PointSet F = point_set_of(inst);
  const Aggregator agg = inst.aggregator ? make_aggregator(*inst.aggregator)
                                         : Aggregator::max_weighted();
  const CenterResult c = chebyshev_center(F, agg, tol.tol);

  ojson result;
  result["center"] = vec(c.center);
  result["radius"] = num(c.radius);
  result["lower_bound"] = num(c.lower_bound);
  result["gap"] = num(c.gap);
  result["iterations"] = c.iterations;
  result["method"] = to_string(c.method);
  result["certified"] = c.certified;

  ojson rec;
  rec["task"] = std::string(to_string(inst.task));
  if (!inst.name.empty()) rec["name"] = inst.name;
  rec["tolerances"] = tolerances_json(tol);
  rec["aggregator"] = agg.name();
  if (agg.kind() == Aggregator::Kind::PowerSum) rec["q"] = num(agg.q());
  if (agg.kind() == Aggregator::Kind::MaxWeighted) {
    rec["pairwise_lower_bound"] = num(pairwise_lower_bound(F));
  }
  rec["result"] = result;

  RunArtifacts out;
  out.exit_code = c.certified ? kExitCertified : kExitUncertified;
  out.record = rec.dump(2) + "\n";
  out.table_name = "distances.csv";
  out.table = csv_row({"point", "weight", "distance", "weighted_distance"});
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double d = norm(F.space(), c.center - F.points()[i]);
    out.table += csv_row({std::to_string(i), fmt12(F.weights()(i)), fmt12(d),
                          fmt12(F.weights()(i) * d)});
  }
  if (svg && F.space().dim() == 2) {
    Canvas cv;
    for (const Vec& p : F.points()) cv.include(p);
    if (agg.kind() == Aggregator::Kind::MaxWeighted) {
      for (std::size_t i = 0; i < F.size(); ++i) {
        const double r = c.radius / F.weights()(i);
        cv.include(F.points()[i], draw_pad(F.space(), r));
        cv.ball(F.space(), F.points()[i], r, kBallStyle);
      }
    }
    for (const Vec& p : F.points()) cv.dot(p, "black");
    cv.include(c.center);
    cv.dot(c.center, "crimson", 4.0);
    out.svg = cv.render("center, radius " + fmt12(c.radius));
  }
  return out;
}

RunArtifacts run_nnet(const Instance& inst, const Tolerances& tol, bool svg) {
  const PointSet F = point_set_of(inst);
  const bool exact = inst.method == "exact";
  const NNetResult r = exact ? best_nnet_exact(F, *inst.n, tol.tol)
                             : best_nnet_heuristic(F, *inst.n, tol.tol);
  ojson nets = ojson::array();
  for (const Vec& y : r.nets) nets.push_back(vec(y));
  ojson rec;
  rec["task"] = "nnet";
  if (!inst.name.empty()) rec["name"] = inst.name;
  rec["tolerances"] = tolerances_json(tol);
  rec["n"] = *inst.n;
  rec["method"] = inst.method;
  rec["result"] = {{"nets", nets},
                   {"covering_radius", num(r.covering_radius)},
                   {"assignment", r.assignment},
                   {"optimal", r.optimal}};

  RunArtifacts out;
  out.exit_code = exact && r.optimal ? kExitCertified : kExitUncertified;
  out.record = rec.dump(2) + "\n";
  out.table_name = "assignment.csv";
  out.table = csv_row({"point", "net", "distance"});
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double d = norm(F.space(), F.points()[i] - r.nets[r.assignment[i]]);
    out.table += csv_row({std::to_string(i), std::to_string(r.assignment[i]), fmt12(d)});
  }
  if (svg && F.space().dim() == 2) {
    Canvas cv;
    for (const Vec& y : r.nets) {
      cv.include(y, draw_pad(F.space(), r.covering_radius));
      cv.ball(F.space(), y, r.covering_radius, kBallStyle);
    }
    for (std::size_t i = 0; i < F.size(); ++i) {
      cv.include(F.points()[i]);
      cv.line(F.points()[i], r.nets[r.assignment[i]], kLinkStyle);
    }
    for (const Vec& p : F.points()) cv.dot(p, "black");
    for (const Vec& y : r.nets) cv.dot(y, "crimson", 4.0);
    out.svg = cv.render(std::to_string(*inst.n) + "-net, covering radius " +
                        fmt12(r.covering_radius));
  }
  return out;
}

RunArtifacts run_intersect(const Instance& inst, const Tolerances& tol, bool svg) {
  const NormSpec& space = *inst.space;
  const std::vector<Ball> balls = balls_of(inst);
  const FeasibilityCertificate c = intersect(space, balls, tol.feas_tol);
  ojson rec;
  rec["task"] = "intersect";
  if (!inst.name.empty()) rec["name"] = inst.name;
  rec["tolerances"] = tolerances_json(tol);
  rec["certificate"] = certificate_json(c);

  RunArtifacts out;
  out.exit_code = c.status == FeasibilityStatus::Undetermined ? kExitUncertified : kExitCertified;
  out.record = rec.dump(2) + "\n";
  out.table_name = "balls.csv";
  out.table = csv_row({"ball", "center", "radius", "witness_slack"});
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const std::string slack =
        c.witness ? fmt12(balls[i].radius - norm(space, *c.witness - balls[i].center)) : "";
    out.table += csv_row({std::to_string(i), vec_text(balls[i].center), fmt12(balls[i].radius),
                          slack});
  }
  if (svg && space.dim() == 2) {
    Canvas cv;
    for (const Ball& b : balls) {
      cv.include(b.center, draw_pad(space, b.radius));
      cv.ball(space, b.center, b.radius, kBallStyle);
      cv.dot(b.center, "black");
    }
    if (c.witness) cv.dot(*c.witness, "crimson", 4.0);
    out.svg = cv.render(std::string(to_string(c.status)) + ", depth " + fmt12(c.depth));
  }
  return out;
}

RunArtifacts run_equalize(const Instance& inst, const Tolerances& tol, bool svg) {
  const NormSpec& space = *inst.space;
  const std::vector<Ball> balls = balls_of(inst);
  const double r = *inst.r;
  const EqualizeResult res = equalize(space, balls, r, tol.margin_tol, tol.feas_tol);

  ojson steps = ojson::array();
  for (const EqualizeStep& s : res.steps) {
    ojson j;
    j["index"] = s.index;
    j["case"] = to_string(s.kind);
    if (s.separator) {
      j["separator"] = vec(s.separator->coefficients());
      j["dual_norm"] = num(s.separator->dual_norm_value());
      j["functional_sup"] = num(step_functional_sup(s, balls[s.index], r));
    }
    if (s.epsilon) j["epsilon"] = num(*s.epsilon);
    if (s.direction) j["direction"] = vec(*s.direction);
    j["new_center"] = vec(s.new_center);
    j["displacement"] = num(norm(space, s.new_center - balls[s.index].center));
    steps.push_back(j);
  }
  ojson new_balls = ojson::array();
  for (const Ball& b : res.new_balls) {
    new_balls.push_back({{"center", vec(b.center)}, {"radius", num(b.radius)}});
  }
  ojson rec;
  rec["task"] = "equalize";
  if (!inst.name.empty()) rec["name"] = inst.name;
  rec["tolerances"] = tolerances_json(tol);
  rec["r"] = num(r);
  rec["steps"] = steps;
  rec["new_balls"] = new_balls;
  rec["verification"] = certificate_json(res.verification);

  RunArtifacts out;
  out.exit_code = kExitCertified;
  out.record = rec.dump(2) + "\n";
  out.table_name = "steps.csv";
  out.table = csv_row({"index", "case", "epsilon", "displacement", "allowed_displacement"});
  for (const EqualizeStep& s : res.steps) {
    out.table += csv_row({std::to_string(s.index), to_string(s.kind),
                          s.epsilon ? fmt12(*s.epsilon) : "",
                          fmt12(norm(space, s.new_center - balls[s.index].center)),
                          fmt12(r - balls[s.index].radius)});
  }
  if (svg && space.dim() == 2) {
    Canvas cv;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      cv.include(balls[i].center, draw_pad(space, balls[i].radius));
      cv.include(res.new_balls[i].center, draw_pad(space, r));
      cv.ball(space, balls[i].center, balls[i].radius, kBallStyle);
      cv.ball(space, res.new_balls[i].center, r, kNewBallStyle);
      cv.line(balls[i].center, res.new_balls[i].center, kLinkStyle);
      cv.dot(balls[i].center, "black");
      cv.dot(res.new_balls[i].center, "darkorange");
    }
    out.svg = cv.render("relocated to common radius " + fmt12(r));
  }
  return out;
}

RunArtifacts run_sweep(const Instance& inst, const Tolerances& tol, bool svg) {
  const std::vector<Vec> seed = vectors_of(inst.points);
  const SweepResult s = radius_sweep(*inst.variant, seed, inst.dims, tol.tol);
  ojson records = ojson::array();
  bool all_certified = true;
  for (const SweepRecord& r : s.records) {
    records.push_back({{"d", r.d},
                       {"radius", num(r.radius)},
                       {"center", vec(r.center)},
                       {"certified", r.certified}});
    all_certified = all_certified && r.certified;
  }
  ojson rec;
  rec["task"] = "sweep";
  if (!inst.name.empty()) rec["name"] = inst.name;
  rec["tolerances"] = tolerances_json(tol);
  rec["variant"] = to_string(s.variant);
  rec["exploratory"] = true;
  rec["records"] = records;
  rec["non_increasing"] = s.non_increasing;

  RunArtifacts out;
  out.exit_code = all_certified ? kExitCertified : kExitUncertified;
  out.record = rec.dump(2) + "\n";
  out.table_name = "sweep.csv";
  out.table = sweep_csv(s);
  if (svg) out.svg = sweep_svg(s);
  return out;
}

const std::map<std::string, std::string, std::less<>>& demos() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"square-corners", R"({
  "name": "square-corners",
  "task": "nnet",
  "space": {"dim": 2, "norm": "l2"},
  "points": [[0, 0], [1, 0], [0, 1], [1, 1]],
  "n": 2,
  "method": "exact"
})"},
      {"equilateral-disks", R"({
  "name": "equilateral-disks",
  "task": "intersect",
  "space": {"dim": 2, "norm": "l2"},
  "balls": [
    {"center": [0, 0], "radius": 1.05},
    {"center": [2, 0], "radius": 1.05},
    {"center": [1, 1.7320508075688772], "radius": 1.05}
  ]
})"},
      {"line-gap", R"({
  "name": "line-gap",
  "task": "equalize",
  "space": {"dim": 1, "norm": "l2"},
  "balls": [{"center": [0], "radius": 1}, {"center": [4], "radius": 1}],
  "r": 3
})"},
      {"x-space-sweep", R"({
  "name": "x-space-sweep",
  "task": "sweep",
  "variant": "x-space",
  "points": [[0, 0], [2, 2]],
  "dims": [2, 4, 6, 8]
})"},
  };
  return table;
}

}  // namespace

RunArtifacts execute(const Instance& inst, const RunOptions& options) {
  Tolerances tol = inst.tolerances;
  if (options.tol) {
    if (!(*options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
    tol.tol = *options.tol;
    tol.feas_tol = *options.tol;
  }
  switch (inst.task) {
    case Task::Center:
    case Task::WeightedCenter:
    case Task::FCenter: return run_center(inst, tol, options.svg);
    case Task::NNet: return run_nnet(inst, tol, options.svg);
    case Task::Intersect: return run_intersect(inst, tol, options.svg);
    case Task::Equalize: return run_equalize(inst, tol, options.svg);
    case Task::Sweep: return run_sweep(inst, tol, options.svg);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown task");
}

int run(const Instance& instance, const RunOptions& options) {
  try {
    const RunArtifacts a = execute(instance, options);
    std::filesystem::create_directories(options.output_dir);
    const auto write = [&](const std::string& name, const std::string& text) {
      std::ofstream f(options.output_dir / name, std::ios::binary);
      f << text;
      if (!f) throw Error(ErrorCode::Io, "cannot write " + (options.output_dir / name).string());
    };
    write("result.json", a.record);
    write(a.table_name, a.table);
    if (a.svg) write("plot.svg", *a.svg);
    return a.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: Io: " << e.what() << '\n';
    return kExitError;
  }
}

std::vector<std::string> demo_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : demos()) out.push_back(name);
  return out;
}

Instance demo_instance(const std::string& name) {
  auto it = demos().find(name);
  if (it == demos().end()) throw Error(ErrorCode::Schema, "unknown demo '" + name + "'");
  return parse_instance_text(it->second, "demo:" + name);
}

}  // namespace chebcenter
