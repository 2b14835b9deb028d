#include <algorithm>
#include <filesystem>
#include <fstream>

#include "chebcenter/format.hpp"
#include "chebcenter/report.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"

using namespace chebcenter;
using chebtest::v;
using nlohmann::json;

namespace {

Instance parse(std::string_view text) { return parse_instance_text(text, "test"); }

json record_of(const Instance& inst) { return json::parse(execute(inst, {}).record); }

}  // namespace

TEST_CASE("minimal center instance") {
  const Instance inst = parse(R"({"task": "center", "space": {"dim": 2, "norm": "l2"},
                                  "points": [[0, 0], [2, 0]]})");
  CHECK(inst.task == Task::Center);
  CHECK(inst.tolerances == Tolerances{});
  CHECK(inst.weights.empty());
  const RunArtifacts a = execute(inst, {});
  CHECK(a.exit_code == kExitCertified);
  const json rec = json::parse(a.record);
  CHECK(rec["result"]["radius"].get<double>() == doctest::Approx(1).epsilon(1e-9));
  CHECK(rec["tolerances"]["tol"].get<double>() == 1e-9);
}

TEST_CASE("schema violations name the field") {
  CHECK_THROWS_WITH_AS(parse(R"({"task": "weighted-center", "space": {"dim": 1, "norm": "l2"},
                                 "points": [[0], [3]], "weights": [1]})"),
                       doctest::Contains("'weights'"), Error);
  CHECK_THROWS_WITH_AS(parse(R"({"task": "center", "space": {"dim": 1, "norm": "l2"},
                                 "points": [[0]], "pionts": []})"),
                       doctest::Contains("'pionts'"), Error);
  CHECK_THROWS_WITH_AS(parse(R"({"task": "center", "space": {"dim": 2, "norm": "l3"},
                                 "points": [[0, 0]]})"),
                       doctest::Contains("'space.norm'"), Error);
  CHECK_THROWS_WITH_AS(parse(R"({"task": "center", "space": {"dim": 2, "norm": "l2"},
                                 "points": [[0, 0], [1]]})"),
                       doctest::Contains("'points[1]'"), Error);
  CHECK_THROWS_WITH_AS(parse(R"({"task": "equalize", "space": {"dim": 1, "norm": "l2"},
                                 "balls": [{"center": [0], "radius": -1}], "r": 2})"),
                       doctest::Contains("'balls[0].radius'"), Error);
  CHECK_THROWS_WITH_AS(parse(R"({"task": "sweep", "variant": "x-space", "points": [[0, 0]],
                                 "dims": [3]})"),
                       doctest::Contains("'dims[0]'"), Error);
  CHECK_THROWS_AS(parse("{not json"), Error);
  CHECK_THROWS_WITH_AS(parse_instance("/nonexistent/instance.json"), doctest::Contains("Io"), Error);
}

TEST_CASE("precondition failures surface at run time") {
  const Instance inst = parse(R"({"task": "equalize", "space": {"dim": 1, "norm": "l2"},
      "balls": [{"center": [0], "radius": 1}, {"center": [4], "radius": 1}], "r": 1.0})");
  CHECK_THROWS_WITH_AS(execute(inst, {}), doctest::Contains("PreconditionRadius"), Error);
  const auto dir = std::filesystem::temp_directory_path() / "chebcenter_precondition";
  CHECK(run(inst, {dir, std::nullopt, false}) == kExitError);
}

TEST_CASE("round trip on every demo and a constrained instance") {
  std::vector<Instance> all;
  for (const std::string& name : demo_names()) all.push_back(demo_instance(name));
  all.push_back(parse(R"({"name": "c", "task": "f-center",
      "space": {"dim": 3, "norm": "weighted-sup", "scales": [1, 2, 0.5],
                "constraints": {"A": [[1, 1, 1]], "b": [0.1]}},
      "points": [[0.1, 0, 0], [0, 0.1, 0]], "weights": [1, 2],
      "aggregator": {"kind": "power-sum", "q": 2.5},
      "tolerances": {"tol": 1e-7, "feas_tol": 1e-8, "margin_tol": 1e-5}})"));
  all.push_back(parse(R"({"task": "nnet", "space": {"dim": 1, "norm": "l1"},
      "points": [[0], [1], [10]], "n": 2, "method": "heuristic"})"));
  for (const Instance& inst : all) {
    const Instance again = parse(serialize_instance(inst));
    CHECK(again == inst);
    CHECK(serialize_instance(again) == serialize_instance(inst));
  }
}

TEST_CASE("exit codes and record contents") {
  const json disks = record_of(demo_instance("equilateral-disks"));
  CHECK(disks["certificate"]["status"] == "Empty");
  CHECK(execute(demo_instance("equilateral-disks"), {}).exit_code == kExitCertified);

  const Instance oracle = parse(R"({"task": "f-center", "space": {"dim": 2, "norm": "l2"},
      "points": [[0, 0], [1, 0], [0, 1]], "aggregator": {"kind": "oracle", "name": "sum-squares"}})");
  CHECK(execute(oracle, {}).exit_code == kExitUncertified);

  const Instance heuristic = parse(R"({"task": "nnet", "space": {"dim": 1, "norm": "l2"},
      "points": [[0], [1], [10], [11]], "n": 2, "method": "heuristic"})");
  CHECK(execute(heuristic, {}).exit_code == kExitUncertified);

  const json nets = record_of(demo_instance("square-corners"));
  CHECK(nets["result"]["covering_radius"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));

  const RunArtifacts gap = execute(demo_instance("line-gap"), {});
  CHECK(gap.exit_code == kExitCertified);
  CHECK(gap.table_name == "steps.csv");
  const json g = json::parse(gap.record);
  CHECK(g["verification"]["status"] == "Empty");
  CHECK(g["new_balls"][0]["center"][0].get<double>() == -2.0);

  const RunArtifacts sweep = execute(demo_instance("x-space-sweep"), {".", std::nullopt, true});
  CHECK(sweep.table_name == "sweep.csv");
  REQUIRE(sweep.svg.has_value());
}

TEST_CASE("run writes the artifacts") {
  const auto dir = std::filesystem::temp_directory_path() / "chebcenter_run_test";
  std::filesystem::remove_all(dir);
  CHECK(run(demo_instance("square-corners"), {dir, std::nullopt, true}) == kExitCertified);
  CHECK(std::filesystem::exists(dir / "result.json"));
  CHECK(std::filesystem::exists(dir / "assignment.csv"));
  CHECK(std::filesystem::exists(dir / "plot.svg"));
  std::ifstream in(dir / "plot.svg");
  const std::string svg((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(svg.rfind("<?xml", 0) == 0);
}

TEST_CASE("tolerance override is echoed") {
  RunOptions opt;
  opt.tol = 1e-6;
  const json rec = json::parse(execute(demo_instance("square-corners"), opt).record);
  CHECK(rec["tolerances"]["tol"].get<double>() == 1e-6);
}

TEST_CASE("determinism of records") {
  for (const std::string& name : demo_names()) {
    CHECK(execute(demo_instance(name), {}).record == execute(demo_instance(name), {}).record);
  }
}

TEST_CASE("formatting helpers") {
  CHECK(fmt12(1.0 / 3) == "0.333333333333");
  CHECK(fmt12(2.0) == "2");
  CHECK(round12(0.1 + 0.2) == 0.3);
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_row({"1", "x,y"}) == "1,\"x,y\"\r\n");
}

TEST_CASE("demo names") {
  std::vector<std::string> names = demo_names();
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"equilateral-disks", "line-gap", "square-corners", "x-space-sweep"});
  CHECK_THROWS_AS(demo_instance("nope"), Error);
}
