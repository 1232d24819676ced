#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xpmlab/commands.hpp"
#include "xpmlab/errors.hpp"
#include "xpmlab/version.hpp"

namespace {

// Exit codes: 0 ok, 1 usage, 2 config, 3 validation, 4 model, 5 io.

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw xpmlab::IoError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool quiet = false;
};

int run(const std::string& command, const Options& opt) {
  xpmlab::ExperimentConfig cfg =
      opt.config_path.empty() ? xpmlab::parse_config("{}")
                              : xpmlab::parse_config(slurp(opt.config_path));
  if (opt.seed_set) cfg.rng_seed = opt.seed;

  std::string out_dir = opt.out_dir;
  if (out_dir.empty()) {
    if (const char* env = std::getenv("XPMLAB_OUT")) out_dir = env;
  }
  if (out_dir.empty()) out_dir = cfg.output_dir;

  std::vector<std::string> written;
  if (command == "simulate")
    written = xpmlab::cmd_simulate(cfg, out_dir);
  else if (command == "scan")
    written = xpmlab::cmd_scan(cfg, out_dir);
  else if (command == "shift")
    written = xpmlab::cmd_shift(cfg, out_dir);
  else if (command == "bandwidth")
    written = xpmlab::cmd_bandwidth(cfg, out_dir);
  else if (command == "counts")
    written = xpmlab::cmd_counts(cfg, out_dir);

  if (!opt.quiet)
    for (const auto& path : written) std::cout << path << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("xpmlab ") + xpmlab::kVersion +
               " - cascaded-XPM spectral manipulation laboratory"};
  app.require_subcommand(1);
  app.fallthrough(); // allow global options after the subcommand

  Options opt;
  app.add_option("--config", opt.config_path, "JSON config path (defaults apply if omitted)");
  app.add_option("--out", opt.out_dir, "output directory (overrides config and XPMLAB_OUT)");
  auto* seed_opt = app.add_option("--seed", opt.seed, "RNG seed override");
  app.add_flag("--quiet", opt.quiet, "suppress the written-files listing");

  app.add_subcommand("simulate", "run the cascade once and export input/output spectra");
  app.add_subcommand("scan", "delay/energy scan with matrix export");
  app.add_subcommand("shift", "optimize pump parameters for a target frequency shift");
  app.add_subcommand("bandwidth", "optimize pump parameters for a target bandwidth");
  app.add_subcommand("counts", "Monte Carlo detection chain with histogram export");

  CLI11_PARSE(app, argc, argv);
  opt.seed_set = seed_opt->count() > 0;

  try {
    return run(app.get_subcommands().front()->get_name(), opt);
  } catch (const xpmlab::ConfigError& e) {
    std::cerr << "error[config]: " << e.what() << "\n";
    return 2;
  } catch (const xpmlab::ValidationError& e) {
    std::cerr << "error[validation]: " << e.what() << "\n";
    return 3;
  } catch (const xpmlab::ModelError& e) {
    std::cerr << "error[model]: " << e.what() << "\n";
    return 4;
  } catch (const xpmlab::IoError& e) {
    std::cerr << "error[io]: " << e.what() << "\n";
    return 5;
  }
}
