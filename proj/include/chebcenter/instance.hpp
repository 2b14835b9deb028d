#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chebcenter/centers.hpp"
#include "chebcenter/experiments.hpp"
#include "chebcenter/norm.hpp"

namespace chebcenter {

enum class Task { Center, WeightedCenter, FCenter, NNet, Intersect, Equalize, Sweep };

std::string_view to_string(Task task);

struct AggregatorSpec {
  std::string kind = "max-weighted";  // max-weighted | power-sum | oracle
  double q = 1.0;                     // power-sum only
  std::string oracle;                 // registered oracle name

  bool operator==(const AggregatorSpec&) const = default;
};

struct BallSpec {
  std::vector<double> center;
  double radius = 0.0;

  bool operator==(const BallSpec&) const = default;
};

struct Tolerances {
  double tol = 1e-9;
  double feas_tol = 1e-9;
  double margin_tol = 1e-6;

  bool operator==(const Tolerances&) const = default;
};

// One task per file. Which payload fields are present depends on the task;
// parse_instance rejects anything else.
struct Instance {
  std::string name;
  Task task = Task::Center;
  std::optional<NormSpec> space;  // absent for Sweep
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
  std::optional<AggregatorSpec> aggregator;
  std::vector<BallSpec> balls;
  std::optional<double> r;
  std::optional<int> n;
  std::string method;  // nnet: exact | heuristic
  std::optional<TruncationVariant> variant;
  std::vector<int> dims;
  Tolerances tolerances;

  bool operator==(const Instance&) const = default;
};

// Names accepted for oracle aggregators.
std::vector<std::string> oracle_names();
Aggregator make_aggregator(const AggregatorSpec& spec);

Instance parse_instance(const std::filesystem::path& path);
Instance parse_instance_text(std::string_view text, std::string_view origin = "<string>");
std::string serialize_instance(const Instance& instance);

// Module-level views of the payload.
PointSet point_set_of(const Instance& instance);
std::vector<Vec> vectors_of(const std::vector<std::vector<double>>& rows);

}  // namespace chebcenter
