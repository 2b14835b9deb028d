#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chebcenter/instance.hpp"

namespace chebcenter {

// Process exit codes of `run`.
inline constexpr int kExitCertified = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUncertified = 2;

struct RunOptions {
  std::filesystem::path output_dir = ".";
  std::optional<double> tol;  // overrides tolerances.tol and tolerances.feas_tol
  bool svg = false;
};

// Everything a run produces, before anything touches the filesystem.
struct RunArtifacts {
  int exit_code = kExitCertified;
  std::string record;  // result.json contents
  std::string table_name;
  std::string table;  // CSV
  std::optional<std::string> svg;
};

// Solves the instance. Throws chebcenter::Error on failure.
RunArtifacts execute(const Instance& instance, const RunOptions& options);

// execute + write result.json, the CSV table and (with --svg, 2-D or sweep
// only) plot.svg into options.output_dir. Errors are reported on stderr and
// mapped to kExitError.
int run(const Instance& instance, const RunOptions& options);

std::vector<std::string> demo_names();
// Golden instances; throws Schema for an unknown name.
Instance demo_instance(const std::string& name);

}  // namespace chebcenter
