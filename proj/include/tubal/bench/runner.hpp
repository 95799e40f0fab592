#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tubal/bench/config.hpp"
#include "tubal/init.hpp"
#include "tubal/io.hpp"
#include "tubal/solve.hpp"
#include "tubal/synth.hpp"

namespace tubal::bench {

struct RunOutput {
  std::size_t solver_index = 0;
  std::string label;
  Method method = Method::Apgd;
  Index repeat = 0;
  IterTrace trace;
};

inline std::string trace_filename(std::size_t solver_index, const std::string& label,
                                  Index repeat) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "s%02zu_", solver_index);
  return std::string(buf) + label + "_rep" + std::to_string(repeat) + ".csv";
}

inline FactorPair build_init(const InitConfig& init, const Problem& prob, Index rank,
                             std::uint64_t seed_offset) {
  const std::uint64_t seed = init.seed + seed_offset;
  switch (init.kind) {
    case InitConfig::Kind::Spectral: return spectral_init(prob.model, rank);
    case InitConfig::Kind::Random:
      return random_init(prob.xstar.dims(), rank, init.scale, seed);
    case InitConfig::Kind::SmallRandom:
      return random_init(prob.xstar.dims(), rank, 1e-10, seed);
  }
  throw ConfigError("init: unknown kind");
}

// Runs every (solver x repeat) combination. Repeat j shifts the problem,
// operator, and init seeds by j, giving independent instances that are still
// fully reproducible. An optional hook sees each run as it finishes; an
// optional factory can attach a per-iteration observer to individual runs.
using RunHook = std::function<void(const RunOutput&, const Problem&)>;
using ObserverFactory = std::function<StepObserver(const RunOutput&, const Problem&)>;

inline std::vector<RunOutput> execute(const RunConfig& cfg, const RunHook& hook = {},
                                      const ObserverFactory& make_observer = {}) {
  validate(cfg);
  std::vector<RunOutput> outputs;
  for (Index rep = 0; rep < cfg.repeats; ++rep) {
    const auto offset = static_cast<std::uint64_t>(rep);
    Problem prob = gen_problem(cfg.problem.spec(offset), cfg.problem.kind, cfg.problem.m,
                               cfg.problem.op_seed + offset);
    for (std::size_t s = 0; s < cfg.solvers.size(); ++s) {
      const SolverEntry& entry = cfg.solvers[s];
      FactorPair start = build_init(entry.init ? *entry.init : cfg.init, prob, cfg.rank, offset);
      RunOutput out;
      out.solver_index = s;
      out.label = entry.label.empty() ? method_name(entry.method) : entry.label;
      out.method = entry.method;
      out.repeat = rep;
      StepObserver observer;
      if (make_observer) observer = make_observer(out, prob);
      out.trace = run(prob.model, std::move(start), entry.solver_config(), observer);
      if (hook) hook(out, prob);
      outputs.push_back(std::move(out));
    }
  }
  return outputs;
}

}  // namespace tubal::bench
