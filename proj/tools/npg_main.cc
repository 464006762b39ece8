// Command-line front end: run, reproduce, validate.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "npg/experiment.h"

int main(int argc, char** argv) {
  CLI::App app{"Networked policy gradient play simulator"};
  app.require_subcommand(1);

  npg::CliOptions opts;
  std::string spec_path, out_dir;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--spec", spec_path, "experiment file (key = value)");
    cmd->add_option("--set", opts.overrides,
                    "override a setting, key=value (repeatable)");
  };

  CLI::App* run = app.add_subcommand("run", "run replications, write CSVs");
  add_common(run);
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--jobs", opts.jobs, "worker threads (0 = all)");

  std::string figure;
  double scale = 1.0;
  CLI::App* reproduce =
      app.add_subcommand("reproduce", "run a figure's condition grid");
  reproduce->add_option("figure", figure, "fig2, fig3 or fig4")->required();
  add_common(reproduce);
  reproduce->add_option("--scale", scale,
                        "shrink replications and iterations, in (0, 1]");
  reproduce->add_option("--out", out_dir, "output directory");
  reproduce->add_option("--jobs", opts.jobs, "worker threads (0 = all)");

  CLI::App* validate =
      app.add_subcommand("validate", "check a configuration's assumptions");
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!spec_path.empty()) opts.spec_path = spec_path;
  if (!out_dir.empty()) opts.out_dir = out_dir;

  if (run->parsed()) return npg::CmdRun(opts, std::cout, std::cerr);
  if (reproduce->parsed()) {
    return npg::CmdReproduce(figure, scale, opts, std::cout, std::cerr);
  }
  return npg::CmdValidate(opts, std::cout, std::cerr);
}
