#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "stochopt/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"stochastic optimization runs, theorem verification and "
               "budget comparisons"};
  app.set_version_flag("--version", std::string("stochopt ") + stochopt::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir, suite, trace_path;
  long long seed = -1;
  int threads = 1;

  CLI::App* run = app.add_subcommand("run", "execute configured runs");
  run->add_option("--config", config_path, "run configuration (JSON)")
      ->required();
  run->add_option("--seed", seed, "override the configured seeds");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--threads", threads, "worker threads for seed fan-out");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite,
                     "one of: sg-fixed, sg-diminishing, nonconvex, "
                     "noise-reduction, svrg-saga, newton, lbfgs, cd, prox")
      ->required();
  verify->add_option("--out", out_dir, "report directory");

  CLI::App* compare = app.add_subcommand("compare", "ADP-budget comparison");
  compare->add_option("--config", config_path, "comparison configuration (JSON)");
  compare->add_option("--out", out_dir, "output directory");

  CLI::App* report = app.add_subcommand("report", "summarize a trace file");
  report->add_option("trace", trace_path, "trace CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    // CLI11 returns 0 for --help/--version; usage errors map to 2.
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      return stochopt::cli::cmd_run(config_path, seed, out_dir, threads);
    }
    if (verify->parsed()) {
      return stochopt::cli::cmd_verify(suite, out_dir);
    }
    if (compare->parsed()) {
      return stochopt::cli::cmd_compare(config_path, out_dir);
    }
    if (report->parsed()) {
      return stochopt::cli::cmd_report(trace_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
