#pragma once

#include <Eigen/QR>

#include "tubal/factor_pair.hpp"
#include "tubal/ops.hpp"

namespace tubal {

namespace detail {

// Orthonormal basis of the numerical column space of a slice. Column
// pivoting keeps the basis meaningful when interior columns are dependent.
inline Eigen::MatrixXcd colspace_basis(const Eigen::MatrixXcd& m) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  const Index rank = qr.rank();
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), std::min(m.rows(), m.cols()));
  return q.leftCols(std::max<Index>(rank, 0));
}

}  // namespace detail

struct AnglePair {
  double sin_theta_l = 0.0;
  double sin_theta_r = 0.0;
};

// Principal-angle diagnostics between the factor subspaces and the ground
// truth: sin theta_L = ||(I - P_L) * Xstar||_F / ||L * R^T - Xstar||_F and
// the row-space analogue, with P the projector onto the factor's numerical
// column space (built from an orthonormal basis, not a pseudo-inverse).
inline AnglePair diag_angles(const Tensor3& l, const Tensor3& r, const Tensor3& xstar) {
  FactorPair pair = FactorPair::from_spatial(l, r);
  const double denom = (pair.product() - xstar).fro_norm();
  if (denom <= 0.0) throw ZeroError("diag_angles: iterate coincides with the ground truth");
  FreqTensor xf = to_freq(xstar);
  double num_l = 0.0, num_r = 0.0;
  for (Index k = 0; k < xf.n3(); ++k) {
    Eigen::MatrixXcd ql = detail::colspace_basis(pair.lf.slice(k));
    Eigen::MatrixXcd qr = detail::colspace_basis(pair.rf.slice(k));
    num_l += (xf.slice(k) - ql * (ql.adjoint() * xf.slice(k))).squaredNorm();
    num_r += (xf.slice(k) - (xf.slice(k) * qr) * qr.adjoint()).squaredNorm();
  }
  const double n3 = static_cast<double>(xf.n3());
  return {std::sqrt(num_l / n3) / denom, std::sqrt(num_r / n3) / denom};
}

// || F * F^T - Fstar * Fstar^T ||_F for the stacked factors F = [L; R].
inline double dilation_gap(const FactorPair& pair, const Tensor3& lstar, const Tensor3& rstar) {
  FreqTensor lsf = to_freq(lstar);
  FreqTensor rsf = to_freq(rstar);
  const Index n3 = pair.n3();
  double s = 0.0;
  for (Index k = 0; k < n3; ++k) {
    Eigen::MatrixXcd f(pair.lf.n1() + pair.rf.n1(), pair.rank());
    f << pair.lf.slice(k), pair.rf.slice(k);
    Eigen::MatrixXcd fs(lsf.n1() + rsf.n1(), lsf.n2());
    fs << lsf.slice(k), rsf.slice(k);
    s += (f * f.adjoint() - fs * fs.adjoint()).squaredNorm();
  }
  return std::sqrt(s / static_cast<double>(n3));
}

// Damping ceiling sqrt(2 / (L c1^2)) * (f_t - f_star)^{1/2} reported by the
// convergence analysis. Diagnostic only; schedules are driven by the
// configured rule, never by this bound.
inline double theoretical_damping_bound(double loss_gap, double smoothness, double strong_convexity,
                                        Index s_r_m, Index s_rstar_m, Index n3) {
  if (loss_gap < 0 || smoothness <= 0 || strong_convexity <= 0)
    throw BadSpec("theoretical_damping_bound: bad constants");
  const double lm = smoothness, mu = strong_convexity;
  const double over = static_cast<double>(std::max<Index>(s_r_m - s_rstar_m, 0));
  const double c1 = 1.0 / (std::sqrt(5.0) - 1.0) +
                    std::sqrt(2.0 * over) * (lm + mu) / std::sqrt(mu * lm * static_cast<double>(n3));
  return std::sqrt(2.0 / (lm * c1 * c1)) * std::sqrt(loss_gap);
}

}  // namespace tubal
