#include "chebcenter/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace chebcenter {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

const std::map<std::string, Task, std::less<>> kTaskNames = {
    {"center", Task::Center},       {"weighted-center", Task::WeightedCenter},
    {"f-center", Task::FCenter},    {"nnet", Task::NNet},
    {"intersect", Task::Intersect}, {"equalize", Task::Equalize},
    {"sweep", Task::Sweep},
};

const std::map<std::string, NormKind, std::less<>> kNormNames = {
    {"l1", NormKind::L1},
    {"l2", NormKind::L2},
    {"linf", NormKind::LInf},
    {"weighted-sup", NormKind::WeightedSup},
};

const char* norm_name(NormKind k) {
  switch (k) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::LInf: return "linf";
    case NormKind::WeightedSup: return "weighted-sup";
  }
  return "?";
}

// Collects schema errors with the offending field path.
class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw Error(ErrorCode::Schema, origin_ + ": field '" + path + "': " + message);
  }

  void only_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!allowed.count(it.key())) {
        fail(path.empty() ? it.key() : path + "." + it.key(), "unknown or inapplicable field");
      }
    }
  }

  const json& require(const json& obj, const std::string& key, const std::string& path) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
    return *it;
  }

  double number(const json& j, const std::string& path) const {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "number is not finite");
    return v;
  }

  int integer(const json& j, const std::string& path) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
  }

  std::string string(const json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  std::vector<double> vector(const json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  std::vector<std::vector<double>> matrix(const json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array of arrays");
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(vector(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

 private:
  std::string origin_;
};

Mat to_matrix(const std::vector<std::vector<double>>& rows, int cols) {
  Mat m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int k = 0; k < cols; ++k) m(static_cast<Eigen::Index>(i), k) = rows[i][k];
  }
  return m;
}

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> from_vec(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

NormSpec read_space(const Reader& rd, const json& j) {
  rd.only_keys(j, "space", {"dim", "norm", "scales", "constraints"});
  const int dim = rd.integer(rd.require(j, "dim", "space"), "space.dim");
  if (dim < 1) rd.fail("space.dim", "must be at least 1");
  const std::string norm = rd.string(rd.require(j, "norm", "space"), "space.norm");
  auto kind = kNormNames.find(norm);
  if (kind == kNormNames.end()) rd.fail("space.norm", "unknown norm '" + norm + "'");

  Vec scales;
  if (j.contains("scales")) {
    if (kind->second != NormKind::WeightedSup) rd.fail("space.scales", "only valid for weighted-sup");
    const auto s = rd.vector(j["scales"], "space.scales");
    if (static_cast<int>(s.size()) != dim) {
      rd.fail("space.scales", "length " + std::to_string(s.size()) + " differs from dim");
    }
    scales = to_vec(s);
  } else if (kind->second == NormKind::WeightedSup) {
    rd.fail("space.scales", "missing required field");
  }

  std::optional<AffineConstraints> constraints;
  if (j.contains("constraints")) {
    const json& c = j["constraints"];
    rd.only_keys(c, "space.constraints", {"A", "b"});
    const auto A = rd.matrix(rd.require(c, "A", "space.constraints"), "space.constraints.A");
    const auto b = rd.vector(rd.require(c, "b", "space.constraints"), "space.constraints.b");
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (static_cast<int>(A[i].size()) != dim) {
        rd.fail("space.constraints.A[" + std::to_string(i) + "]", "row length differs from dim");
      }
    }
    if (A.size() != b.size()) rd.fail("space.constraints.b", "length differs from row count of A");
    constraints = AffineConstraints{to_matrix(A, dim), to_vec(b)};
  }
  try {
    return NormSpec(kind->second, dim, scales, std::move(constraints));
  } catch (const Error& e) {
    rd.fail("space", e.what());
  }
}

void check_lengths(const Reader& rd, const std::vector<std::vector<double>>& rows,
                   std::size_t dim, const std::string& path) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      rd.fail(path + "[" + std::to_string(i) + "]",
              "length " + std::to_string(rows[i].size()) + " differs from dim " +
                  std::to_string(dim));
    }
  }
}

AggregatorSpec read_aggregator(const Reader& rd, const json& j) {
  rd.only_keys(j, "aggregator", {"kind", "q", "name"});
  AggregatorSpec spec;
  spec.kind = rd.string(rd.require(j, "kind", "aggregator"), "aggregator.kind");
  if (spec.kind == "max-weighted") {
    if (j.contains("q") || j.contains("name")) rd.fail("aggregator", "max-weighted takes no parameters");
  } else if (spec.kind == "power-sum") {
    if (j.contains("name")) rd.fail("aggregator.name", "only valid for oracle aggregators");
    spec.q = rd.number(rd.require(j, "q", "aggregator"), "aggregator.q");
    if (!(spec.q >= 1.0)) rd.fail("aggregator.q", "must be >= 1");
  } else if (spec.kind == "oracle") {
    if (j.contains("q")) rd.fail("aggregator.q", "only valid for power-sum");
    spec.oracle = rd.string(rd.require(j, "name", "aggregator"), "aggregator.name");
    const auto names = oracle_names();
    if (std::find(names.begin(), names.end(), spec.oracle) == names.end()) {
      rd.fail("aggregator.name", "unknown oracle '" + spec.oracle + "'");
    }
  } else {
    rd.fail("aggregator.kind", "unknown aggregator '" + spec.kind + "'");
  }
  return spec;
}

Tolerances read_tolerances(const Reader& rd, const json& j) {
  rd.only_keys(j, "tolerances", {"tol", "feas_tol", "margin_tol"});
  Tolerances t;
  const auto positive = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    slot = rd.number(j[key], std::string("tolerances.") + key);
    if (!(slot > 0.0)) rd.fail(std::string("tolerances.") + key, "must be positive");
  };
  positive("tol", t.tol);
  positive("feas_tol", t.feas_tol);
  positive("margin_tol", t.margin_tol);
  return t;
}

std::set<std::string> allowed_keys(Task task) {
  std::set<std::string> keys = {"name", "task", "tolerances"};
  switch (task) {
    case Task::Center: keys.insert({"space", "points"}); break;
    case Task::WeightedCenter: keys.insert({"space", "points", "weights"}); break;
    case Task::FCenter: keys.insert({"space", "points", "weights", "aggregator"}); break;
    case Task::NNet: keys.insert({"space", "points", "n", "method"}); break;
    case Task::Intersect: keys.insert({"space", "balls"}); break;
    case Task::Equalize: keys.insert({"space", "balls", "r"}); break;
    case Task::Sweep: keys.insert({"variant", "points", "dims"}); break;
  }
  return keys;
}

Instance read_instance(const Reader& rd, const json& root) {
  if (!root.is_object()) rd.fail("", "instance must be an object");
  Instance inst;
  const std::string task = rd.string(rd.require(root, "task", ""), "task");
  auto t = kTaskNames.find(task);
  if (t == kTaskNames.end()) rd.fail("task", "unknown task '" + task + "'");
  inst.task = t->second;
  rd.only_keys(root, "", allowed_keys(inst.task));

  if (root.contains("name")) inst.name = rd.string(root["name"], "name");
  if (root.contains("tolerances")) inst.tolerances = read_tolerances(rd, root["tolerances"]);

  if (inst.task == Task::Sweep) {
    const std::string v = rd.string(rd.require(root, "variant", ""), "variant");
    if (v == "x-space") inst.variant = TruncationVariant::XSpace;
    else if (v == "y-space") inst.variant = TruncationVariant::YSpace;
    else rd.fail("variant", "unknown variant '" + v + "'");
    inst.points = rd.matrix(rd.require(root, "points", ""), "points");
    if (inst.points.empty()) rd.fail("points", "seed must contain at least one point");
    check_lengths(rd, inst.points, inst.points.front().size(), "points");
    const json& dims = rd.require(root, "dims", "");
    if (!dims.is_array() || dims.empty()) rd.fail("dims", "expected a nonempty array of integers");
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const std::string path = "dims[" + std::to_string(i) + "]";
      const int d = rd.integer(dims[i], path);
      if (d < 2 || d % 2 != 0) rd.fail(path, "dimension must be even and >= 2");
      if (d < static_cast<int>(inst.points.front().size())) {
        rd.fail(path, "dimension is below the seed dimension");
      }
      inst.dims.push_back(d);
    }
    return inst;
  }

  inst.space = read_space(rd, rd.require(root, "space", ""));
  const std::size_t dim = static_cast<std::size_t>(inst.space->dim());

  if (inst.task == Task::Intersect || inst.task == Task::Equalize) {
    const json& balls = rd.require(root, "balls", "");
    if (!balls.is_array() || balls.empty()) rd.fail("balls", "expected a nonempty array of balls");
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const std::string path = "balls[" + std::to_string(i) + "]";
      rd.only_keys(balls[i], path, {"center", "radius"});
      BallSpec b;
      b.center = rd.vector(rd.require(balls[i], "center", path), path + ".center");
      if (b.center.size() != dim) rd.fail(path + ".center", "length differs from dim");
      b.radius = rd.number(rd.require(balls[i], "radius", path), path + ".radius");
      if (b.radius < 0.0) rd.fail(path + ".radius", "must be nonnegative");
      inst.balls.push_back(std::move(b));
    }
    if (inst.task == Task::Equalize) {
      inst.r = rd.number(rd.require(root, "r", ""), "r");
    }
    return inst;
  }

  inst.points = rd.matrix(rd.require(root, "points", ""), "points");
  if (inst.points.empty()) rd.fail("points", "at least one point is required");
  check_lengths(rd, inst.points, dim, "points");
  if (root.contains("weights")) {
    inst.weights = rd.vector(root["weights"], "weights");
    if (inst.weights.size() != inst.points.size()) {
      rd.fail("weights", "length " + std::to_string(inst.weights.size()) +
                             " differs from points length " + std::to_string(inst.points.size()));
    }
  } else if (inst.task == Task::WeightedCenter) {
    rd.fail("weights", "missing required field");
  }
  if (inst.task == Task::FCenter) {
    inst.aggregator = read_aggregator(rd, rd.require(root, "aggregator", ""));
  }
  if (inst.task == Task::NNet) {
    inst.n = rd.integer(rd.require(root, "n", ""), "n");
    if (*inst.n < 1) rd.fail("n", "must be at least 1");
    inst.method = root.contains("method") ? rd.string(root["method"], "method") : "exact";
    if (inst.method != "exact" && inst.method != "heuristic") {
      rd.fail("method", "expected 'exact' or 'heuristic'");
    }
  }
  try {
    (void)point_set_of(inst);
  } catch (const Error& e) {
    rd.fail(inst.weights.empty() ? "points" : "points/weights", e.what());
  }
  return inst;
}

}  // namespace

std::string_view to_string(Task task) {
  for (const auto& [name, t] : kTaskNames) {
    if (t == task) return name;
  }
  return "?";
}

std::vector<std::string> oracle_names() { return {"log-sum-exp", "max-plus-mean", "sum-squares"}; }

Aggregator make_aggregator(const AggregatorSpec& spec) {
  if (spec.kind == "max-weighted") return Aggregator::max_weighted();
  if (spec.kind == "power-sum") return Aggregator::power_sum(spec.q);
  if (spec.kind == "oracle") {
    if (spec.oracle == "sum-squares") {
      return Aggregator::oracle(
          [](std::span<const double> t) {
            double s = 0.0;
            for (double v : t) s += v * v;
            return s;
          },
          spec.oracle);
    }
    if (spec.oracle == "log-sum-exp") {
      // log(sum exp t_i) - log n: zero at the origin, increasing, coercive.
      return Aggregator::oracle(
          [](std::span<const double> t) {
            double top = 0.0;
            for (double v : t) top = std::max(top, v);
            double s = 0.0;
            for (double v : t) s += std::exp(v - top);
            return std::max(0.0, top + std::log(s) - std::log(static_cast<double>(t.size())));
          },
          spec.oracle);
    }
    if (spec.oracle == "max-plus-mean") {
      return Aggregator::oracle(
          [](std::span<const double> t) {
            double top = 0.0, sum = 0.0;
            for (double v : t) {
              top = std::max(top, v);
              sum += v;
            }
            return top + sum / static_cast<double>(t.size());
          },
          spec.oracle);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown oracle '" + spec.oracle + "'");
  }
  throw Error(ErrorCode::InvalidArgument, "unknown aggregator '" + spec.kind + "'");
}

std::vector<Vec> vectors_of(const std::vector<std::vector<double>>& rows) {
  std::vector<Vec> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(to_vec(r));
  return out;
}

PointSet point_set_of(const Instance& instance) {
  if (!instance.space) throw Error(ErrorCode::InvalidArgument, "instance has no space");
  return PointSet(*instance.space, vectors_of(instance.points), instance.weights);
}

Instance parse_instance_text(std::string_view text, std::string_view origin) {
  const Reader rd{std::string(origin)};
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string(origin) + ": " + e.what());
  }
  return read_instance(rd, root);
}

Instance parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "cannot read " + path.string());
  return parse_instance_text(buf.str(), path.string());
}

std::string serialize_instance(const Instance& inst) {
  ojson j;
  if (!inst.name.empty()) j["name"] = inst.name;
  j["task"] = std::string(to_string(inst.task));
  if (inst.space) {
    const NormSpec& s = *inst.space;
    ojson space;
    space["dim"] = s.dim();
    space["norm"] = norm_name(s.kind());
    if (s.kind() == NormKind::WeightedSup) space["scales"] = from_vec(s.scales());
    if (s.constrained()) {
      ojson rows = ojson::array();
      const Mat& A = s.constraints()->A;
      for (Eigen::Index i = 0; i < A.rows(); ++i) rows.push_back(from_vec(A.row(i).transpose()));
      space["constraints"] = {{"A", rows}, {"b", from_vec(s.constraints()->b)}};
    }
    j["space"] = space;
  }
  if (inst.variant) j["variant"] = to_string(*inst.variant);
  if (!inst.points.empty()) j["points"] = inst.points;
  if (!inst.weights.empty()) j["weights"] = inst.weights;
  if (inst.aggregator) {
    ojson a;
    a["kind"] = inst.aggregator->kind;
    if (inst.aggregator->kind == "power-sum") a["q"] = inst.aggregator->q;
    if (inst.aggregator->kind == "oracle") a["name"] = inst.aggregator->oracle;
    j["aggregator"] = a;
  }
  if (!inst.balls.empty()) {
    ojson balls = ojson::array();
    for (const BallSpec& b : inst.balls) balls.push_back({{"center", b.center}, {"radius", b.radius}});
    j["balls"] = balls;
  }
  if (inst.r) j["r"] = *inst.r;
  if (inst.n) j["n"] = *inst.n;
  if (inst.task == Task::NNet) j["method"] = inst.method;
  if (!inst.dims.empty()) j["dims"] = inst.dims;
  j["tolerances"] = {{"tol", inst.tolerances.tol},
                     {"feas_tol", inst.tolerances.feas_tol},
                     {"margin_tol", inst.tolerances.margin_tol}};
  return j.dump(2) + "\n";
}

}  // namespace chebcenter
