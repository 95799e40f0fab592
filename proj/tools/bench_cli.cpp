// Benchmark harness for the tubal library: runs configured experiments or
// named presets, writing per-iteration CSV traces and summary tables.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tubal/bench/commands.hpp"

namespace fs = std::filesystem;
using namespace tubal;
using namespace tubal::bench;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  std::int64_t seed = -1;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "path to a run-config JSON file");
  cmd->add_option("--preset", args.preset_name, "named preset (see dump-preset)");
  cmd->add_option("--out-dir", args.out_dir, "output directory for traces and summaries");
  cmd->add_option("--seed", args.seed, "override the problem/operator/init base seeds");
  cmd->add_option("--threads", args.threads, "worker threads for the measurement operator")
      ->check(CLI::PositiveNumber);
}

RunConfig load_config(const CommonArgs& args) {
  if (args.config_path.empty() == args.preset_name.empty())
    throw ConfigError("provide exactly one of --config or --preset");
  RunConfig cfg;
  if (!args.preset_name.empty()) {
    cfg = preset(args.preset_name);
  } else {
    std::ifstream in(args.config_path);
    if (!in) throw IoError("cannot open config " + args.config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    cfg = parse_config(buffer.str());
  }
  if (args.seed >= 0) {
    const auto s = static_cast<std::uint64_t>(args.seed);
    cfg.problem.seed = s;
    cfg.problem.op_seed = s + 1000003;
    cfg.init.seed = s + 2000003;
    for (auto& entry : cfg.solvers)
      if (entry.init) entry.init->seed = s + 2000003;
  }
  return cfg;
}

fs::path resolve_out_dir(const CommonArgs& args, const RunConfig& cfg) {
  if (!args.out_dir.empty()) return args.out_dir;
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("TUBAL_BENCH_OUT")) return env;
  return "bench_out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tubal_bench: low-tubal-rank estimation benchmarks"};
  app.require_subcommand(0, 1);

  CommonArgs run_args, sweep_args, abl_args;
  std::string sweep_axis = "step_size";
  std::vector<std::string> sweep_values;
  std::string dump_name, top_dump_name;

  CLI::App* run_cmd = app.add_subcommand("run", "execute all configured runs");
  add_common(run_cmd, run_args);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid of runs over one hyperparameter");
  add_common(sweep_cmd, sweep_args);
  sweep_cmd->add_option("--axis", sweep_axis, "step_size or damping");
  sweep_cmd->add_option("--values", sweep_values, "comma separated values (damping: f/<c> or a number)")
      ->delimiter(',')
      ->required();

  CLI::App* abl_cmd = app.add_subcommand("ablation", "apgd with and without rebalancing");
  add_common(abl_cmd, abl_args);

  CLI::App* dump_cmd = app.add_subcommand("dump-preset", "print a preset config as JSON");
  dump_cmd->add_option("name", dump_name, "preset name")->required();

  app.add_option("--dump-preset", top_dump_name, "print a preset config as JSON and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!top_dump_name.empty()) return cmd_dump_preset(top_dump_name, std::cout);
    if (dump_cmd->parsed()) return cmd_dump_preset(dump_name, std::cout);
    if (run_cmd->parsed()) {
      MeasurementOperator::set_threads(run_args.threads);
      RunConfig cfg = load_config(run_args);
      return cmd_run(cfg, resolve_out_dir(run_args, cfg));
    }
    if (sweep_cmd->parsed()) {
      MeasurementOperator::set_threads(sweep_args.threads);
      RunConfig cfg = load_config(sweep_args);
      return cmd_sweep(cfg, sweep_axis, sweep_values, resolve_out_dir(sweep_args, cfg));
    }
    if (abl_cmd->parsed()) {
      MeasurementOperator::set_threads(abl_args.threads);
      RunConfig cfg = load_config(abl_args);
      return cmd_rebalance_ablation(cfg, resolve_out_dir(abl_args, cfg));
    }
    std::cerr << app.help() << std::endl;
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << std::endl;
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
