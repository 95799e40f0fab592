#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tubal/loss.hpp"
#include "tubal/solve.hpp"
#include "tubal/synth.hpp"

namespace tubal::bench {

using nlohmann::json;

// Configuration problems are user errors, reported with a json-pointer-ish
// location and turned into exit code 2 by the CLI.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ProblemConfig {
  LossModel::Kind kind = LossModel::Kind::Factorization;
  Index n1 = 0, n2 = 0, n3 = 0;
  std::vector<Index> multi_rank;
  double kappa = 1.0;
  std::uint64_t seed = 1;
  Index m = 0;                // recovery only
  std::uint64_t op_seed = 1;  // recovery only

  GroundTruthSpec spec(std::uint64_t seed_offset = 0) const {
    return {{n1, n2, n3}, multi_rank, kappa, seed + seed_offset};
  }
  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

struct InitConfig {
  enum class Kind { Spectral, Random, SmallRandom };
  Kind kind = Kind::Random;
  double scale = 1.0;  // Random only
  std::uint64_t seed = 1;
  friend bool operator==(const InitConfig&, const InitConfig&) = default;
};

struct SolverEntry {
  Method method = Method::Apgd;
  std::string label;  // defaults to the method name
  double step_size = 0.5;
  Index max_iters = 1000;
  DampingSchedule damping = DampingSchedule::proportional(10.0);
  bool rebalance = true;
  double stop_tol = 1e-12;
  double divergence_guard = 1e6;
  std::optional<InitConfig> init;  // overrides the run-level init

  SolverConfig solver_config() const {
    SolverConfig c;
    c.method = method;
    c.step_size = step_size;
    c.max_iters = max_iters;
    c.damping = damping;
    c.rebalance_enabled = rebalance;
    c.stop_tol = stop_tol;
    c.divergence_guard = divergence_guard;
    return c;
  }
  friend bool operator==(const SolverEntry&, const SolverEntry&) = default;
};

struct RunConfig {
  ProblemConfig problem;
  Index rank = 1;
  InitConfig init;
  std::vector<SolverEntry> solvers;
  Index repeats = 1;
  std::string out_dir;  // optional; flag and env var take precedence
  bool dump_ground_truth = false;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// --- validation --------------------------------------------------------------

inline void validate(const RunConfig& cfg) {
  const auto& p = cfg.problem;
  if (p.n1 < 1 || p.n2 < 1 || p.n3 < 1) throw ConfigError("problem: dims must be positive");
  if (static_cast<Index>(p.multi_rank.size()) != p.n3)
    throw ConfigError("problem.multi_rank: need one entry per frontal slice");
  if (p.kappa < 1.0) throw ConfigError("problem.kappa: must be >= 1");
  if (p.kind == LossModel::Kind::Recovery && p.m < 1)
    throw ConfigError("problem.m: recovery needs at least one measurement");
  if (cfg.rank < 1 || cfg.rank > std::min(p.n1, p.n2))
    throw ConfigError("rank: out of range for the problem dims");
  if (cfg.solvers.empty()) throw ConfigError("solvers: list must not be empty");
  if (cfg.repeats < 1) throw ConfigError("repeats: must be >= 1");
  auto check_init = [&](const InitConfig& i, const std::string& where) {
    if (i.kind == InitConfig::Kind::Spectral && p.kind != LossModel::Kind::Recovery)
      throw ConfigError(where + ": spectral init requires a recovery problem");
    if (i.kind == InitConfig::Kind::Random && i.scale <= 0)
      throw ConfigError(where + ": random init scale must be positive");
  };
  check_init(cfg.init, "init");
  for (std::size_t s = 0; s < cfg.solvers.size(); ++s) {
    const auto& e = cfg.solvers[s];
    const std::string where = "solvers[" + std::to_string(s) + "]";
    if (e.step_size < 0) throw ConfigError(where + ".step_size: must be nonnegative");
    if (e.max_iters < 0) throw ConfigError(where + ".max_iters: must be nonnegative");
    if (e.damping.kind == DampingSchedule::Kind::ProportionalToLoss && e.damping.c <= 0)
      throw ConfigError(where + ".damping.c: must be positive");
    if (e.damping.kind == DampingSchedule::Kind::Fixed && e.damping.fixed_value <= 0)
      throw ConfigError(where + ".damping.value: must be positive");
    for (char ch : e.label)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-')
        throw ConfigError(where + ".label: only [A-Za-z0-9_-]");
    if (e.init) check_init(*e.init, where + ".init");
  }
  GroundTruthSpec gs = p.spec();
  try {
    gs.validate();
  } catch (const BadSpec& b) {
    throw ConfigError(std::string("problem: ") + b.what());
  }
}

// --- json (strict: unknown keys are rejected) --------------------------------

namespace detail {

inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) ok = true;
    if (!ok) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

template <typename T>
T require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

template <typename T>
T optional_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

}  // namespace detail

inline const char* kind_name(LossModel::Kind k) {
  return k == LossModel::Kind::Factorization ? "factorization" : "recovery";
}
inline const char* init_kind_name(InitConfig::Kind k) {
  switch (k) {
    case InitConfig::Kind::Spectral: return "spectral";
    case InitConfig::Kind::Random: return "random";
    case InitConfig::Kind::SmallRandom: return "small_random";
  }
  return "?";
}

inline json to_json(const InitConfig& i) {
  json j{{"kind", init_kind_name(i.kind)}, {"seed", i.seed}};
  if (i.kind == InitConfig::Kind::Random) j["scale"] = i.scale;
  return j;
}

inline InitConfig init_from_json(const json& j, const std::string& where) {
  detail::check_keys(j, {"kind", "scale", "seed"}, where);
  InitConfig i;
  const std::string kind = detail::require<std::string>(j, "kind", where);
  if (kind == "spectral") i.kind = InitConfig::Kind::Spectral;
  else if (kind == "random") i.kind = InitConfig::Kind::Random;
  else if (kind == "small_random") i.kind = InitConfig::Kind::SmallRandom;
  else throw ConfigError(where + ".kind: expected spectral|random|small_random");
  i.scale = detail::optional_or<double>(j, "scale", 1.0, where);
  i.seed = detail::optional_or<std::uint64_t>(j, "seed", 1, where);
  return i;
}

inline json to_json(const DampingSchedule& d) {
  if (d.kind == DampingSchedule::Kind::ProportionalToLoss)
    return json{{"kind", "proportional"}, {"c", d.c}};
  return json{{"kind", "fixed"}, {"value", d.fixed_value}};
}

inline DampingSchedule damping_from_json(const json& j, const std::string& where) {
  detail::check_keys(j, {"kind", "c", "value"}, where);
  const std::string kind = detail::require<std::string>(j, "kind", where);
  if (kind == "proportional")
    return DampingSchedule::proportional(detail::optional_or<double>(j, "c", 10.0, where));
  if (kind == "fixed") return DampingSchedule::fixed(detail::require<double>(j, "value", where));
  throw ConfigError(where + ".kind: expected proportional|fixed");
}

inline json to_json(const SolverEntry& e) {
  json j{{"method", method_name(e.method)},
         {"label", e.label.empty() ? method_name(e.method) : e.label},
         {"step_size", e.step_size},
         {"max_iters", e.max_iters},
         {"damping", to_json(e.damping)},
         {"rebalance", e.rebalance},
         {"stop_tol", e.stop_tol},
         {"divergence_guard", e.divergence_guard}};
  if (e.init) j["init"] = to_json(*e.init);
  return j;
}

inline SolverEntry solver_from_json(const json& j, const std::string& where) {
  detail::check_keys(j,
                     {"method", "label", "step_size", "max_iters", "damping", "rebalance",
                      "stop_tol", "divergence_guard", "init"},
                     where);
  SolverEntry e;
  const std::string method = detail::require<std::string>(j, "method", where);
  if (method == "apgd") e.method = Method::Apgd;
  else if (method == "scaledgd") e.method = Method::ScaledGd;
  else if (method == "fgd") e.method = Method::Fgd;
  else throw ConfigError(where + ".method: expected apgd|scaledgd|fgd");
  e.label = detail::optional_or<std::string>(j, "label", method, where);
  e.step_size = detail::optional_or<double>(j, "step_size", 0.5, where);
  e.max_iters = detail::optional_or<Index>(j, "max_iters", 1000, where);
  if (j.contains("damping")) e.damping = damping_from_json(j.at("damping"), where + ".damping");
  e.rebalance = detail::optional_or<bool>(j, "rebalance", true, where);
  e.stop_tol = detail::optional_or<double>(j, "stop_tol", 1e-12, where);
  e.divergence_guard = detail::optional_or<double>(j, "divergence_guard", 1e6, where);
  if (j.contains("init")) e.init = init_from_json(j.at("init"), where + ".init");
  return e;
}

inline json to_json(const RunConfig& cfg) {
  json problem{{"kind", kind_name(cfg.problem.kind)},
               {"n1", cfg.problem.n1},
               {"n2", cfg.problem.n2},
               {"n3", cfg.problem.n3},
               {"multi_rank", cfg.problem.multi_rank},
               {"kappa", cfg.problem.kappa},
               {"seed", cfg.problem.seed}};
  if (cfg.problem.kind == LossModel::Kind::Recovery) {
    problem["m"] = cfg.problem.m;
    problem["op_seed"] = cfg.problem.op_seed;
  }
  json solvers = json::array();
  for (const auto& e : cfg.solvers) solvers.push_back(to_json(e));
  json j{{"problem", problem}, {"rank", cfg.rank},       {"init", to_json(cfg.init)},
         {"solvers", solvers}, {"repeats", cfg.repeats}, {"dump_ground_truth", cfg.dump_ground_truth}};
  if (!cfg.out_dir.empty()) j["out_dir"] = cfg.out_dir;
  return j;
}

inline RunConfig config_from_json(const json& j) {
  detail::check_keys(
      j, {"problem", "rank", "init", "solvers", "repeats", "out_dir", "dump_ground_truth"},
      "config");
  RunConfig cfg;
  if (!j.contains("problem")) throw ConfigError("config: missing key 'problem'");
  const json& p = j.at("problem");
  detail::check_keys(p, {"kind", "n1", "n2", "n3", "multi_rank", "kappa", "seed", "m", "op_seed"},
                     "problem");
  const std::string kind = detail::require<std::string>(p, "kind", "problem");
  if (kind == "factorization") cfg.problem.kind = LossModel::Kind::Factorization;
  else if (kind == "recovery") cfg.problem.kind = LossModel::Kind::Recovery;
  else throw ConfigError("problem.kind: expected factorization|recovery");
  cfg.problem.n1 = detail::require<Index>(p, "n1", "problem");
  cfg.problem.n2 = detail::require<Index>(p, "n2", "problem");
  cfg.problem.n3 = detail::require<Index>(p, "n3", "problem");
  cfg.problem.multi_rank = detail::require<std::vector<Index>>(p, "multi_rank", "problem");
  cfg.problem.kappa = detail::optional_or<double>(p, "kappa", 1.0, "problem");
  cfg.problem.seed = detail::optional_or<std::uint64_t>(p, "seed", 1, "problem");
  if (cfg.problem.kind == LossModel::Kind::Factorization && (p.contains("m") || p.contains("op_seed")))
    throw ConfigError("problem: m/op_seed only apply to recovery");
  cfg.problem.m = detail::optional_or<Index>(p, "m", 0, "problem");
  cfg.problem.op_seed = detail::optional_or<std::uint64_t>(p, "op_seed", 1, "problem");

  cfg.rank = detail::require<Index>(j, "rank", "config");
  if (!j.contains("init")) throw ConfigError("config: missing key 'init'");
  cfg.init = init_from_json(j.at("init"), "init");
  if (!j.contains("solvers")) throw ConfigError("config: missing key 'solvers'");
  if (!j.at("solvers").is_array()) throw ConfigError("solvers: expected an array");
  std::size_t s = 0;
  for (const json& e : j.at("solvers"))
    cfg.solvers.push_back(solver_from_json(e, "solvers[" + std::to_string(s++) + "]"));
  cfg.repeats = detail::optional_or<Index>(j, "repeats", 1, "config");
  cfg.out_dir = detail::optional_or<std::string>(j, "out_dir", "", "config");
  cfg.dump_ground_truth = detail::optional_or<bool>(j, "dump_ground_truth", false, "config");
  validate(cfg);
  return cfg;
}

// Parses config text, mapping json syntax errors to line/column messages.
inline RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  return config_from_json(j);
}

inline std::string dump_config(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

}  // namespace tubal::bench
