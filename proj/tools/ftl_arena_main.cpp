#include <string>

#include "CLI11.hpp"
#include "ftl_arena/experiment.hpp"
#include "ftl_arena/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ftl-arena: online linear prediction experiments over convex sets"};
  app.require_subcommand(1);
  app.fallthrough();

  ftla::RunOverrides overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool no_svg = false;
  app.add_option("--seed", seed, "override the config master seed");
  app.add_option("--out", out_dir, "override the config output directory");
  app.add_flag("--no-svg", no_svg, "skip SVG chart output");

  std::string run_config, sweep_config;
  auto* run = app.add_subcommand("run", "fixed-horizon experiment from a config");
  run->add_option("config", run_config, "config file path")->required();
  auto* sweep = app.add_subcommand("sweep", "horizon-grid experiment from a config");
  sweep->add_option("config", sweep_config, "config file path")->required();

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite,
                     "all | identities | lemmas | bounds | geometry");

  CLI11_PARSE(app, argc, argv);

  overrides.seed = seed;
  overrides.out_dir = out_dir;
  overrides.no_svg = no_svg;

  if (run->parsed()) return ftla::cmd_run(run_config, overrides);
  if (sweep->parsed()) return ftla::cmd_sweep(sweep_config, overrides);
  return ftla::cmd_verify(suite);
}
