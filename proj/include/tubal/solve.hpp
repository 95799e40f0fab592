#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "tubal/loss.hpp"
#include "tubal/tlinalg.hpp"

namespace tubal {

enum class Method { Apgd, ScaledGd, Fgd };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Apgd: return "apgd";
    case Method::ScaledGd: return "scaledgd";
    case Method::Fgd: return "fgd";
  }
  return "?";
}

// Damping schedule for the preconditioner: either tied to the running loss
// (lambda_t = f_t / c) or a fixed positive constant.
struct DampingSchedule {
  enum class Kind { ProportionalToLoss, Fixed };
  Kind kind = Kind::ProportionalToLoss;
  double c = 10.0;
  double fixed_value = 0.0;

  static DampingSchedule proportional(double c) {
    if (c <= 0) throw BadSpec("DampingSchedule: c must be positive");
    return {Kind::ProportionalToLoss, c, 0.0};
  }
  static DampingSchedule fixed(double value) {
    if (value <= 0) throw BadSpec("DampingSchedule: fixed lambda must be positive");
    return {Kind::Fixed, 0.0, value};
  }
  double lambda(double loss) const {
    return kind == Kind::ProportionalToLoss ? loss / c : fixed_value;
  }
  friend bool operator==(const DampingSchedule&, const DampingSchedule&) = default;
};

struct SolverConfig {
  Method method = Method::Apgd;
  double step_size = 0.5;
  Index max_iters = 1000;
  DampingSchedule damping = DampingSchedule::proportional(10.0);
  bool rebalance_enabled = true;
  double stop_tol = 1e-12;       // on relative error
  double divergence_guard = 1e6;

  void validate() const {
    if (step_size < 0) throw BadSpec("SolverConfig: step size must be nonnegative");
    if (max_iters < 0) throw BadSpec("SolverConfig: max_iters must be nonnegative");
    if (divergence_guard <= 1) throw BadSpec("SolverConfig: divergence guard too small");
  }
};

enum class RunStatus { Ok, Diverged, Singular };

inline const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Diverged: return "diverged";
    case RunStatus::Singular: return "singular";
  }
  return "?";
}

struct TraceRow {
  Index iter = 0;
  double loss = 0.0;
  double rel_err = 0.0;
  double balance_gap = 0.0;
  double sigma_min_gram = 0.0;
  double lambda = 0.0;
  double elapsed_s = 0.0;
  RunStatus status = RunStatus::Ok;
};

struct IterTrace {
  std::vector<TraceRow> rows;
  RunStatus status = RunStatus::Ok;

  double final_rel_err() const { return rows.back().rel_err; }
  double final_loss() const { return rows.back().loss; }
  double wall_time_s() const { return rows.back().elapsed_s; }
  // First iteration at or below tol; -1 if never reached.
  Index iters_to(double tol) const {
    for (const auto& r : rows)
      if (r.rel_err <= tol) return r.iter;
    return -1;
  }
  double min_rel_err() const {
    double m = rows.front().rel_err;
    for (const auto& r : rows) m = std::min(m, r.rel_err);
    return m;
  }
};

// --- rebalance ------------------------------------------------------------

// Refactors (L, R) so that L^T * L = R^T * R while L * R^T is unchanged:
// thin QR of both factors, SVD of the small core W_L * W_R^T, square-root
// split of the singular values.
inline std::pair<FreqTensor, FreqTensor> rebalance_freq(const FreqTensor& lf,
                                                        const FreqTensor& rf) {
  if (lf.n2() != rf.n2() || lf.n3() != rf.n3()) throw DimMismatch("rebalance: shapes disagree");
  FreqQr ql = tqr_freq(lf);
  FreqQr qr = tqr_freq(rf);
  FreqTsvd core = tsvd_freq(fmul(ql.w, qr.w, Adj::Right));
  FreqTensor root = fdiag_sqrt_freq(core.s);
  return {fmul(ql.q, fmul(core.u, root)), fmul(qr.q, fmul(core.v, root))};
}

inline FactorPair rebalance(const Tensor3& l_in, const Tensor3& r_in) {
  auto [lf, rf] = rebalance_freq(to_freq(l_in), to_freq(r_in));
  return FactorPair::from_freq_images(std::move(lf), std::move(rf));
}

// --- single steps -----------------------------------------------------------

struct StepResult {
  FactorPair pair;
  double lambda = 0.0;
  RunStatus status = RunStatus::Ok;
};

// One APGD iteration: damped preconditioned half-step in L, rebalance,
// fresh gradient at the half-step iterate, damped half-step in R,
// rebalance. The damping value is held fixed across both half-steps.
inline StepResult apgd_step(const LossModel& model, const FactorPair& pair,
                            const SolverConfig& cfg, double loss_at_pair,
                            const Tensor3& grad_at_pair) {
  const double eta = cfg.step_size;
  const double lambda = cfg.damping.lambda(loss_at_pair);

  FreqTensor grad_l = fmul(to_freq(grad_at_pair), pair.rf);
  FreqTensor l_tilde = pair.lf - eta * precond_solve_freq(grad_l, pair.rf, lambda);

  FreqTensor l_half, r_half;
  if (cfg.rebalance_enabled) {
    std::tie(l_half, r_half) = rebalance_freq(l_tilde, pair.rf);
  } else {
    l_half = std::move(l_tilde);
    r_half = pair.rf;
  }
  FactorPair half = FactorPair::from_freq_images(std::move(l_half), std::move(r_half));

  Tensor3 grad_half = model.gradient(half.product());
  FreqTensor grad_r = fmul(to_freq(grad_half), half.lf, Adj::Left);
  FreqTensor r_tilde = half.rf - eta * precond_solve_freq(grad_r, half.lf, lambda);

  FreqTensor l_next, r_next;
  if (cfg.rebalance_enabled) {
    std::tie(l_next, r_next) = rebalance_freq(half.lf, r_tilde);
  } else {
    l_next = std::move(half.lf);
    r_next = std::move(r_tilde);
  }
  return {FactorPair::from_freq_images(std::move(l_next), std::move(r_next)), lambda,
          RunStatus::Ok};
}

// One ScaledGD iteration: both factors move simultaneously from the same
// gradient, preconditioned by the undamped Grams. A numerically singular
// Gram is reported in the result, not thrown.
inline StepResult scaledgd_step(const LossModel& model, const FactorPair& pair,
                                const SolverConfig& cfg, double /*loss_at_pair*/,
                                const Tensor3& grad_at_pair) {
  const double eta = cfg.step_size;
  FreqTensor gf = to_freq(grad_at_pair);
  FreqTensor grad_l = fmul(gf, pair.rf);
  FreqTensor grad_r = fmul(gf, pair.lf, Adj::Left);
  try {
    FreqTensor l_next = pair.lf - eta * precond_solve_freq(grad_l, pair.rf, 0.0);
    FreqTensor r_next = pair.rf - eta * precond_solve_freq(grad_r, pair.lf, 0.0);
    return {FactorPair::from_freq_images(std::move(l_next), std::move(r_next)), 0.0,
            RunStatus::Ok};
  } catch (const SingularPreconditioner&) {
    return {pair, 0.0, RunStatus::Singular};
  }
}

// One factorized gradient descent iteration: plain simultaneous factor
// updates, no preconditioning.
inline StepResult fgd_step(const LossModel& /*model*/, const FactorPair& pair,
                           const SolverConfig& cfg, double /*loss_at_pair*/,
                           const Tensor3& grad_at_pair) {
  const double eta = cfg.step_size;
  FreqTensor gf = to_freq(grad_at_pair);
  FreqTensor l_next = pair.lf - eta * fmul(gf, pair.rf);
  FreqTensor r_next = pair.rf - eta * fmul(gf, pair.lf, Adj::Left);
  return {FactorPair::from_freq_images(std::move(l_next), std::move(r_next)), 0.0,
          RunStatus::Ok};
}

// Convenience overloads evaluating loss and gradient at the pair.
inline StepResult apgd_step(const LossModel& m, const FactorPair& p, const SolverConfig& c) {
  auto [f, g] = m.value_and_gradient(p.product());
  return apgd_step(m, p, c, f, g);
}
inline StepResult scaledgd_step(const LossModel& m, const FactorPair& p, const SolverConfig& c) {
  auto [f, g] = m.value_and_gradient(p.product());
  return scaledgd_step(m, p, c, f, g);
}
inline StepResult fgd_step(const LossModel& m, const FactorPair& p, const SolverConfig& c) {
  auto [f, g] = m.value_and_gradient(p.product());
  return fgd_step(m, p, c, f, g);
}

// --- driver -----------------------------------------------------------------

using StepObserver = std::function<void(const FactorPair&, const TraceRow&)>;

// Iterates the configured method until stop_tol, max_iters, or a failure
// status. Row 0 records the initial point. Failures land in the trace.
inline IterTrace run(const LossModel& model, FactorPair pair, const SolverConfig& cfg,
                     const StepObserver& observer = {}) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  IterTrace trace;
  Tensor3 x = pair.product();
  auto [loss, grad] = model.value_and_gradient(x);
  const double loss_guard = cfg.divergence_guard * std::max(loss, 1.0);
  const double norm_guard =
      cfg.divergence_guard * std::max({pair.l.fro_norm(), pair.r.fro_norm(), 1.0});

  auto make_row = [&](Index iter, double f, double lambda, RunStatus st) {
    TraceRow row;
    row.iter = iter;
    row.loss = f;
    row.rel_err = model.relative_error(x);
    row.balance_gap = pair.balance_gap();
    row.sigma_min_gram = pair.min_gram_eigenvalue();
    row.lambda = lambda;
    row.elapsed_s = elapsed();
    row.status = st;
    return row;
  };

  trace.rows.push_back(make_row(0, loss, 0.0, RunStatus::Ok));
  if (observer) observer(pair, trace.rows.back());

  for (Index t = 1; t <= cfg.max_iters; ++t) {
    if (trace.rows.back().rel_err <= cfg.stop_tol) break;

    StepResult step = [&] {
      switch (cfg.method) {
        case Method::Apgd: return apgd_step(model, pair, cfg, loss, grad);
        case Method::ScaledGd: return scaledgd_step(model, pair, cfg, loss, grad);
        case Method::Fgd: return fgd_step(model, pair, cfg, loss, grad);
      }
      throw BadSpec("run: unknown method");
    }();

    if (step.status != RunStatus::Ok) {
      // factors unchanged; re-record current metrics under the failure flag
      trace.rows.push_back(make_row(t, loss, step.lambda, step.status));
      trace.status = step.status;
      if (observer) observer(pair, trace.rows.back());
      break;
    }

    pair = std::move(step.pair);
    RunStatus st = RunStatus::Ok;
    if (!pair.l.all_finite() || !pair.r.all_finite()) {
      st = RunStatus::Diverged;
      trace.rows.push_back(
          {t, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
           std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
           step.lambda, elapsed(), st});
      trace.status = st;
      if (observer) observer(pair, trace.rows.back());
      break;
    }

    x = pair.product();
    std::tie(loss, grad) = model.value_and_gradient(x);
    if (!std::isfinite(loss) || loss > loss_guard ||
        std::max(pair.l.fro_norm(), pair.r.fro_norm()) > norm_guard)
      st = RunStatus::Diverged;

    trace.rows.push_back(make_row(t, loss, step.lambda, st));
    if (observer) observer(pair, trace.rows.back());
    if (st != RunStatus::Ok) {
      trace.status = st;
      break;
    }
  }
  return trace;
}

}  // namespace tubal
