#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "landmap/common.hpp"

namespace {

void add_common(CLI::App* sub, landmap::cli::RunOptions& o, bool with_input) {
  sub->add_option("--config", o.config, "Flat JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "Top-level seed; overrides the 'seed' key");
  sub->add_option("--out", o.out, "Output directory")->required();
  if (with_input) sub->add_option("--input", o.input, "Input directory; overrides the 'input' key");
  sub->add_flag("--check", o.check, "Compare metrics against the config's gate file; exit 1 on failure");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"landmap: multi-resolution elevation mapping and landing site detection"};
  app.require_subcommand(1);
  landmap::cli::RunOptions opts;

  auto* simulate = app.add_subcommand("simulate", "Render a simulated flight to range images and a pose log");
  auto* fuse = app.add_subcommand("fuse", "Fuse range images and poses into an elevation map");
  auto* detect = app.add_subcommand("detect", "Classify landing sites on a fused map");
  auto* eval = app.add_subcommand("eval", "Run an evaluation experiment and write reports");
  auto* bench = app.add_subcommand("bench", "Time fusion and detection on a simulated flight");
  add_common(simulate, opts, false);
  add_common(fuse, opts, true);
  add_common(detect, opts, true);
  add_common(eval, opts, false);
  add_common(bench, opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return landmap::cli::cmd_simulate(opts, std::cout);
    if (*fuse) return landmap::cli::cmd_fuse(opts, std::cout);
    if (*detect) return landmap::cli::cmd_detect(opts, std::cout);
    if (*eval) return landmap::cli::cmd_eval(opts, std::cout);
    if (*bench) return landmap::cli::cmd_bench(opts, std::cout);
  } catch (const landmap::Error& e) {
    std::cerr << "landmap: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "landmap: unexpected error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
