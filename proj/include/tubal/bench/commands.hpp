#pragma once

#include <iostream>
#include <sstream>

#include "tubal/bench/csv.hpp"
#include "tubal/bench/presets.hpp"
#include "tubal/bench/runner.hpp"

namespace tubal::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

inline const char* kSummaryHeader = "method,label,repeat,final_rel_err,iters_to_1e6,wall_time_s,status";

inline std::string summary_row(const RunOutput& out) {
  std::ostringstream ss;
  ss << method_name(out.method) << ',' << out.label << ',' << out.repeat << ','
     << fmt(out.trace.final_rel_err()) << ',' << out.trace.iters_to(1e-6) << ','
     << fmt(out.trace.wall_time_s()) << ',' << status_name(out.trace.status);
  return ss.str();
}

// Executes all configured runs, writing one trace CSV per run plus a summary.
// Divergence is data, not an error: the exit code stays 0.
inline int cmd_run(const RunConfig& cfg, const fs::path& out_dir) {
  std::ostringstream summary;
  summary << kSummaryHeader << '\n';
  RunHook hook = [&](const RunOutput& out, const Problem& prob) {
    write_trace(out_dir / trace_filename(out.solver_index, out.label, out.repeat), out.trace);
    summary << summary_row(out) << '\n';
    if (cfg.dump_ground_truth && out.solver_index == 0)
      write_tub3(out_dir / ("xstar_rep" + std::to_string(out.repeat) + ".tub3"), prob.xstar);
  };
  execute(cfg, hook);
  write_file_atomic(out_dir / "summary.csv", summary.str());
  return kExitOk;
}

// --- sweeps -------------------------------------------------------------------

enum class SweepAxis { StepSize, Damping };

inline SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "step_size") return SweepAxis::StepSize;
  if (name == "damping") return SweepAxis::Damping;
  throw ConfigError("sweep axis: expected step_size|damping");
}

// Damping sweep values mirror the schedule notation: "f/10" is the
// loss-proportional rule with divisor 10, a bare number is a fixed lambda.
inline DampingSchedule parse_damping_value(const std::string& v) {
  if (v.rfind("f/", 0) == 0) {
    try {
      return DampingSchedule::proportional(std::stod(v.substr(2)));
    } catch (const std::exception&) {
      throw ConfigError("damping value '" + v + "': bad divisor");
    }
  }
  try {
    return DampingSchedule::fixed(std::stod(v));
  } catch (const std::exception&) {
    throw ConfigError("damping value '" + v + "': expected f/<c> or a positive number");
  }
}

inline double parse_step_value(const std::string& v) {
  try {
    const double eta = std::stod(v);
    if (eta < 0) throw ConfigError("step_size value '" + v + "': must be nonnegative");
    return eta;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("step_size value '" + v + "': not a number");
  }
}

inline const char* kSweepHeader =
    "method,label,axis,value,repeat,final_rel_err,iters_to_1e6,status";

// Grid of runs over one axis; per-value trace files plus one summary row per
// (solver, value, repeat) with the error after the configured budget.
inline int cmd_sweep(const RunConfig& base, const std::string& axis_name,
                     const std::vector<std::string>& values, const fs::path& out_dir) {
  const SweepAxis axis = sweep_axis_from_name(axis_name);
  if (values.empty()) throw ConfigError("sweep: need at least one value");
  validate(base);

  std::ostringstream summary;
  summary << kSweepHeader << '\n';
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    RunConfig cfg = base;
    for (auto& entry : cfg.solvers) {
      if (axis == SweepAxis::StepSize) entry.step_size = parse_step_value(values[vi]);
      else entry.damping = parse_damping_value(values[vi]);
    }
    RunHook hook = [&](const RunOutput& out, const Problem&) {
      const std::string name = "v" + std::to_string(vi) + "_" +
                               trace_filename(out.solver_index, out.label, out.repeat);
      write_trace(out_dir / name, out.trace);
      summary << method_name(out.method) << ',' << out.label << ',' << axis_name << ','
              << values[vi] << ',' << out.repeat << ',' << fmt(out.trace.final_rel_err()) << ','
              << out.trace.iters_to(1e-6) << ',' << status_name(out.trace.status) << '\n';
    };
    execute(cfg, hook);
  }
  write_file_atomic(out_dir / "sweep_summary.csv", summary.str());
  return kExitOk;
}

// APGD with and without the rebalancing step, emitting paired traces whose
// balance_gap columns are the point of the experiment.
inline int cmd_rebalance_ablation(const RunConfig& base, const fs::path& out_dir) {
  validate(base);
  for (const auto& entry : base.solvers)
    if (entry.method != Method::Apgd)
      throw ConfigError("ablation: defined only for apgd solver entries");

  RunConfig cfg = base;
  cfg.solvers.clear();
  for (const auto& entry : base.solvers) {
    SolverEntry on = entry;
    on.rebalance = true;
    on.label = (entry.label.empty() ? std::string(method_name(entry.method)) : entry.label) +
               "_rebalance_on";
    SolverEntry off = entry;
    off.rebalance = false;
    off.label = (entry.label.empty() ? std::string(method_name(entry.method)) : entry.label) +
                "_rebalance_off";
    cfg.solvers.push_back(std::move(on));
    cfg.solvers.push_back(std::move(off));
  }
  return cmd_run(cfg, out_dir);
}

inline int cmd_dump_preset(const std::string& name, std::ostream& out) {
  out << dump_config(preset(name));
  return kExitOk;
}

}  // namespace tubal::bench
