// chebctl: command-line front end for the chebcenter library.
//
//   chebctl run <instance-file> [--out DIR] [--tol X] [--svg]
//   chebctl validate <instance-file>
//   chebctl demo <name> [--out DIR] [--svg]

#include <iostream>

#include "CLI11.hpp"
#include "chebcenter/report.hpp"

int main(int argc, char** argv) {
  using namespace chebcenter;

  CLI::App app{"Chebyshev centers, n-nets and ball-intersection certificates"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string out_dir = ".";
  double tol = 0.0;
  bool svg = false;

  auto* run_cmd = app.add_subcommand("run", "Solve one instance file");
  run_cmd->add_option("instance", instance_path, "Instance file (JSON)")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  auto* tol_opt = run_cmd->add_option("--tol", tol, "Override the solver tolerance");
  run_cmd->add_flag("--svg", svg, "Emit plot.svg (2-D instances and sweeps)");

  auto* validate_cmd = app.add_subcommand("validate", "Parse and validate an instance file");
  validate_cmd->add_option("instance", instance_path, "Instance file (JSON)")->required();

  std::string demo_name;
  auto* demo_cmd = app.add_subcommand("demo", "Run a named golden instance");
  demo_cmd->add_option("name", demo_name, "Demo name")
      ->required()
      ->check(CLI::IsMember(demo_names()));
  demo_cmd->add_option("--out", out_dir, "Output directory");
  demo_cmd->add_flag("--svg", svg, "Emit plot.svg");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) {
      const Instance inst = parse_instance(instance_path);
      std::cout << "ok: " << to_string(inst.task) << '\n';
      return kExitCertified;
    }
    RunOptions options;
    options.output_dir = out_dir;
    options.svg = svg;
    if (*run_cmd) {
      if (*tol_opt) options.tol = tol;
      return run(parse_instance(instance_path), options);
    }
    return run(demo_instance(demo_name), options);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
