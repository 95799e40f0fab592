#pragma once

#include <memory>
#include <optional>
#include <utility>

#include "tubal/factor_pair.hpp"
#include "tubal/measurement.hpp"
#include "tubal/ops.hpp"

namespace tubal {

// Loss over candidate tensors X = L * R^T. Two kinds:
//   Factorization  f(X) = 1/2 ||X - Xstar||_F^2
//   Recovery       f(X) = 1/2 ||M(X) - y||_2^2 with y = M(Xstar) (+ optional noise)
// The ground truth is kept in both kinds for error metrics; recovery values
// and gradients only ever touch (M, y).
class LossModel {
 public:
  enum class Kind { Factorization, Recovery };

  static LossModel factorization(Tensor3 xstar) {
    LossModel m;
    m.kind_ = Kind::Factorization;
    m.xstar_ = std::move(xstar);
    m.xstar_norm_ = m.xstar_.fro_norm();
    return m;
  }

  static LossModel recovery(std::shared_ptr<const MeasurementOperator> op, Tensor3 xstar,
                            std::optional<Eigen::VectorXd> noise = std::nullopt) {
    if (op->dims() != xstar.dims()) throw DimMismatch("LossModel: operator dims disagree");
    LossModel m;
    m.kind_ = Kind::Recovery;
    m.op_ = std::move(op);
    m.y_ = m.op_->apply(xstar);
    if (noise) {
      if (noise->size() != m.y_.size()) throw DimMismatch("LossModel: noise length disagrees");
      m.y_ += *noise;
    }
    m.xstar_ = std::move(xstar);
    m.xstar_norm_ = m.xstar_.fro_norm();
    return m;
  }

  Kind kind() const { return kind_; }
  Dims3 dims() const { return xstar_.dims(); }
  const Tensor3& xstar() const { return xstar_; }
  double xstar_norm() const { return xstar_norm_; }
  const MeasurementOperator& op() const { return *op_; }
  const Eigen::VectorXd& y() const { return y_; }

  // Smoothness surrogate: 1 for factorization, 1 + delta_hat for recovery.
  double smoothness() const { return kind_ == Kind::Factorization ? 1.0 : 1.0 + delta_hat_; }
  void set_delta_hat(double d) { delta_hat_ = d; }

  double value_at(const Tensor3& x) const {
    if (x.dims() != xstar_.dims()) throw DimMismatch("LossModel: dims disagree");
    if (kind_ == Kind::Factorization) {
      return 0.5 * (x - xstar_).fro_norm() * (x - xstar_).fro_norm();
    }
    Eigen::VectorXd res = op_->apply(x) - y_;
    return 0.5 * res.squaredNorm();
  }

  // Euclidean gradient of f at X.
  Tensor3 gradient(const Tensor3& x) const {
    if (x.dims() != xstar_.dims()) throw DimMismatch("LossModel: dims disagree");
    if (kind_ == Kind::Factorization) return x - xstar_;
    return op_->adjoint(op_->apply(x) - y_);
  }

  // Value and gradient from one pass over the measurements.
  std::pair<double, Tensor3> value_and_gradient(const Tensor3& x) const {
    if (x.dims() != xstar_.dims()) throw DimMismatch("LossModel: dims disagree");
    if (kind_ == Kind::Factorization) {
      Tensor3 e = x - xstar_;
      const double n = e.fro_norm();
      return {0.5 * n * n, std::move(e)};
    }
    Eigen::VectorXd res = op_->apply(x) - y_;
    return {0.5 * res.squaredNorm(), op_->adjoint(res)};
  }

  double relative_error(const Tensor3& x) const {
    return (x - xstar_).fro_norm() / xstar_norm_;
  }

 private:
  LossModel() = default;

  Kind kind_ = Kind::Factorization;
  Tensor3 xstar_;
  double xstar_norm_ = 0.0;
  std::shared_ptr<const MeasurementOperator> op_;
  Eigen::VectorXd y_;
  double delta_hat_ = 0.0;
};

inline double loss_value(const LossModel& model, const FactorPair& pair) {
  return model.value_at(pair.product());
}

// Frequency images of the factor gradients grad_L = grad f * R and
// grad_R = grad f^T * L, both from one gradient evaluation.
struct FactorGrads {
  FreqTensor l, r;
};

inline FactorGrads factor_gradients(const LossModel& model, const FactorPair& pair,
                                    const Tensor3& x) {
  FreqTensor gf = to_freq(model.gradient(x));
  return {fmul(gf, pair.rf), fmul(gf, pair.lf, Adj::Left)};
}

inline Tensor3 grad_L(const LossModel& model, const FactorPair& pair) {
  return from_freq(fmul(to_freq(model.gradient(pair.product())), pair.rf));
}

inline Tensor3 grad_R(const LossModel& model, const FactorPair& pair) {
  return from_freq(fmul(to_freq(model.gradient(pair.product())), pair.lf, Adj::Left));
}

}  // namespace tubal
